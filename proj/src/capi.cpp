#include "gruppen/gruppen.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include "gruppen/error.hpp"
#include "gruppen/io.hpp"
#include "gruppen/reports.hpp"

struct gruppen_params {
  gruppen::PointLayout layout;
};

struct gruppen_dealing {
  gruppen::Dealing dealing;
};

struct gruppen_bundle {
  gruppen::BundleFile file;
};

struct gruppen_transcript {
  gruppen::Transcript transcript;
};

namespace {

thread_local std::string last_error;

template <class Fn>
gruppen_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return GRUPPEN_OK;
  } catch (const gruppen::Error& e) {
    last_error = e.what();
    return static_cast<gruppen_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return GRUPPEN_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw gruppen::UsageError(std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<gruppen::FieldElement> secrets_from(const gruppen::FieldPtr& spec, const char* const* hex, size_t count) {
  std::vector<gruppen::FieldElement> out;
  for (size_t i = 0; i < count; ++i) {
    require(hex[i], "secret entry");
    out.push_back(gruppen::FieldElement::from_hex(spec, hex[i]));
  }
  return out;
}

const gruppen::PointLayout& common_layout(const gruppen_bundle* const* bundles, size_t count) {
  if (count == 0) throw gruppen::UsageError("no bundles given");
  require(bundles, "bundles");
  for (size_t i = 0; i < count; ++i) {
    require(bundles[i], "bundle");
    if (!(bundles[i]->file.layout == bundles[0]->file.layout))
      throw gruppen::UsageError("bundles come from different parameters or layouts");
  }
  return bundles[0]->file.layout;
}

}  // namespace

extern "C" {

const char* gruppen_last_error(void) { return last_error.c_str(); }

const char* gruppen_status_name(gruppen_status status) {
  switch (status) {
    case GRUPPEN_OK: return "ok";
    case GRUPPEN_CHECK_FAILED: return "check failed";
    case GRUPPEN_ERR_USAGE: return "usage error";
    case GRUPPEN_ERR_REFUSED: return "refused";
    case GRUPPEN_ERR_IO: return "i/o error";
    case GRUPPEN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void gruppen_string_free(char* s) { std::free(s); }

gruppen_status gruppen_params_create(unsigned n, unsigned k, const char* field, const char* layout,
                                     gruppen_params** out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    const auto spec = gruppen::FieldSpec::parse(field);
    const auto id = layout ? gruppen::parse_layout_id(layout) : gruppen::LayoutId::participant_major;
    gruppen::Params params = id == gruppen::LayoutId::compact ? gruppen::Params::for_analysis(n, k, spec)
                                                             : gruppen::Params(n, k, spec);
    *out = new gruppen_params{gruppen::PointLayout(std::move(params), id)};
  });
}

void gruppen_params_destroy(gruppen_params* params) { delete params; }

unsigned gruppen_params_share_size(const gruppen_params* params) {
  return params ? params->layout.params().share_size() : 0;
}

unsigned gruppen_params_degree_bound(const gruppen_params* params) {
  return params ? params->layout.params().degree_bound() : 0;
}

gruppen_status gruppen_deal(const gruppen_params* params, uint64_t seed, const char* const* secrets_hex,
                            size_t secret_count, gruppen_dealing** out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    const auto& layout = params->layout;
    gruppen::Rng rng(seed);
    if (secrets_hex) {
      const auto secrets = secrets_from(layout.params().spec(), secrets_hex, secret_count);
      *out = new gruppen_dealing{gruppen::deal_with_secrets(layout, secrets, rng)};
    } else {
      *out = new gruppen_dealing{gruppen::deal_random(layout, rng)};
    }
  });
}

gruppen_status gruppen_setup(const gruppen_params* params, uint64_t seed, const char* const* secrets_hex,
                             size_t secret_count, gruppen_dealing** out, gruppen_transcript** transcript) {
  return guarded([&] {
    require(params, "params");
    require(secrets_hex, "secrets");
    require(out, "out");
    const auto& layout = params->layout;
    const auto secrets = secrets_from(layout.params().spec(), secrets_hex, secret_count);
    std::vector<std::uint64_t> seeds;
    for (unsigned i = 1; i <= layout.params().n(); ++i) seeds.push_back(gruppen::derive_seed(seed, i));
    auto run = gruppen::run_setup(layout, secrets, seeds);
    *out = new gruppen_dealing{std::move(run.dealing)};
    if (transcript) *transcript = new gruppen_transcript{std::move(run.transcript)};
  });
}

void gruppen_dealing_destroy(gruppen_dealing* dealing) { delete dealing; }

gruppen_status gruppen_dealing_summary(const gruppen_dealing* dealing, char** out) {
  return guarded([&] {
    require(dealing, "dealing");
    require(out, "out");
    *out = dup(gruppen::deal_summary(dealing->dealing));
  });
}

gruppen_status gruppen_dealing_bundle(const gruppen_dealing* dealing, unsigned participant, gruppen_bundle** out) {
  return guarded([&] {
    require(dealing, "dealing");
    require(out, "out");
    const auto& d = dealing->dealing;
    if (participant < 1 || participant > d.params().n())
      throw gruppen::UsageError("participant " + std::to_string(participant) + " out of range");
    *out = new gruppen_bundle{{d.layout, d.bundle(participant)}};
  });
}

gruppen_status gruppen_dealing_write(const gruppen_dealing* dealing, const char* dir) {
  return guarded([&] {
    require(dealing, "dealing");
    require(dir, "dir");
    const std::filesystem::path root(dir);
    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    if (ec) throw gruppen::IoError("cannot create " + root.string() + ": " + ec.message());
    for (const auto& b : dealing->dealing.bundles)
      gruppen::write_text_file(root / gruppen::bundle_file_name(b.participant),
                               gruppen::format_bundle(dealing->dealing.layout, b));
  });
}

gruppen_status gruppen_bundle_read(const char* path, gruppen_bundle** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new gruppen_bundle{gruppen::parse_bundle(gruppen::read_text_file(path))};
  });
}

gruppen_status gruppen_bundle_parse(const char* text, gruppen_bundle** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new gruppen_bundle{gruppen::parse_bundle(text)};
  });
}

gruppen_status gruppen_bundle_format(const gruppen_bundle* bundle, char** out) {
  return guarded([&] {
    require(bundle, "bundle");
    require(out, "out");
    *out = dup(gruppen::format_bundle(bundle->file.layout, bundle->file.bundle));
  });
}

void gruppen_bundle_destroy(gruppen_bundle* bundle) { delete bundle; }

unsigned gruppen_bundle_participant(const gruppen_bundle* bundle) {
  return bundle ? bundle->file.bundle.participant : 0;
}

size_t gruppen_bundle_share_size(const gruppen_bundle* bundle) { return bundle ? bundle->file.bundle.share.size() : 0; }

gruppen_status gruppen_bundle_params(const gruppen_bundle* bundle, gruppen_params** out) {
  return guarded([&] {
    require(bundle, "bundle");
    require(out, "out");
    *out = new gruppen_params{bundle->file.layout};
  });
}

gruppen_status gruppen_bundle_secret_hex(const gruppen_bundle* bundle, char** out) {
  return guarded([&] {
    require(bundle, "bundle");
    require(out, "out");
    const auto& b = bundle->file.bundle;
    if (!b.secret) throw gruppen::UsageError("participant " + std::to_string(b.participant) + " holds no secret");
    *out = dup(b.secret->to_hex());
  });
}

gruppen_status gruppen_bundle_share_hex(const gruppen_bundle* bundle, size_t index, char** out) {
  return guarded([&] {
    require(bundle, "bundle");
    require(out, "out");
    const auto& share = bundle->file.bundle.share;
    if (index >= share.size()) throw gruppen::UsageError("share index out of range");
    *out = dup(share[index].to_hex());
  });
}

gruppen_status gruppen_reconstruct(const gruppen_bundle* const* bundles, size_t count, char** report) {
  return guarded([&] {
    require(report, "report");
    const auto& layout = common_layout(bundles, count);
    std::vector<gruppen::ParticipantBundle> list;
    for (size_t i = 0; i < count; ++i) list.push_back(bundles[i]->file.bundle);
    *report = dup(gruppen::reconstruct_report(layout, gruppen::reconstruct_all(layout, list)));
  });
}

gruppen_status gruppen_recover(const gruppen_bundle* const* bundles, size_t count, unsigned requester,
                               const unsigned* quorum, size_t quorum_size, const char* mode, uint64_t seed,
                               const char* gate_path, char** report, gruppen_transcript** transcript) {
  return guarded([&] {
    require(mode, "mode");
    require(report, "report");
    if (quorum_size > 0) require(quorum, "quorum");
    const auto& layout = common_layout(bundles, count);
    std::vector<gruppen::ParticipantBundle> list;
    for (size_t i = 0; i < count; ++i) list.push_back(bundles[i]->file.bundle);
    std::vector<unsigned> members(quorum, quorum + quorum_size);
    const auto rmode = gruppen::parse_recovery_mode(mode);

    std::optional<gruppen::RecoveryGate> gate;
    if (gate_path) {
      if (std::filesystem::exists(gate_path))
        gate = gruppen::parse_gate(layout, gruppen::read_text_file(gate_path));
      else
        gate.emplace(layout);
    }
    auto outcome = gruppen::recover_from_bundles(layout, list, requester, members, rmode, seed, std::move(gate));
    if (gate_path) gruppen::write_text_file(gate_path, gruppen::format_gate(outcome.gate));
    const gruppen::RecoverySession session(layout, requester, members, rmode);
    *report = dup(gruppen::recover_report(session, outcome.state));
    if (transcript) *transcript = new gruppen_transcript{std::move(outcome.transcript)};
  });
}

gruppen_status gruppen_transcript_create(const gruppen_params* params, gruppen_transcript** out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    *out = new gruppen_transcript{{params->layout, {}, {}, {}}};
  });
}

gruppen_status gruppen_transcript_read(const char* path, gruppen_transcript** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new gruppen_transcript{gruppen::parse_transcript(gruppen::read_text_file(path))};
  });
}

gruppen_status gruppen_transcript_write(const gruppen_transcript* transcript, const char* path) {
  return guarded([&] {
    require(transcript, "transcript");
    require(path, "path");
    gruppen::write_text_file(path, gruppen::format_transcript(transcript->transcript));
  });
}

gruppen_status gruppen_transcript_format(const gruppen_transcript* transcript, char** out) {
  return guarded([&] {
    require(transcript, "transcript");
    require(out, "out");
    *out = dup(gruppen::format_transcript(transcript->transcript));
  });
}

void gruppen_transcript_destroy(gruppen_transcript* transcript) { delete transcript; }

gruppen_status gruppen_analyze_transcript(const gruppen_transcript* transcript, const unsigned* coalition,
                                          size_t coalition_size, const unsigned* granted, size_t granted_size,
                                          char** report, unsigned* codimension) {
  return guarded([&] {
    require(transcript, "transcript");
    require(report, "report");
    if (coalition_size > 0) require(coalition, "coalition");
    if (granted_size > 0) require(granted, "granted");
    const std::set<unsigned> members(coalition, coalition + coalition_size);
    const std::set<unsigned> grants(granted, granted + granted_size);
    const auto analysis = gruppen::analyze_transcript(transcript->transcript, members, grants);
    *report = dup(analysis.text);
    if (codimension) *codimension = static_cast<unsigned>(analysis.codim);
  });
}

gruppen_status gruppen_analyze_scheme(const gruppen_params* params, const char* scheme, const char* check,
                                      char** report) {
  bool passed = false;
  const gruppen_status status = guarded([&] {
    require(params, "params");
    require(scheme, "scheme");
    require(check, "check");
    require(report, "report");
    const auto analysis = gruppen::analyze_scheme(params->layout, scheme, check);
    passed = analysis.passed;
    *report = dup(analysis.text);
  });
  if (status == GRUPPEN_OK && !passed) {
    last_error = "check failed";
    return GRUPPEN_CHECK_FAILED;
  }
  return status;
}

gruppen_status gruppen_demo_leak(const char* field, uint64_t seed, char** report) {
  bool holds = false;
  const gruppen_status status = guarded([&] {
    require(report, "report");
    const auto demo = gruppen::run_leak_demo(gruppen::FieldSpec::parse(field ? field : "p=13"), seed);
    holds = demo.holds;
    *report = dup(demo.text);
  });
  if (status == GRUPPEN_OK && !holds) {
    last_error = "extracted value disagrees with the expected combination";
    return GRUPPEN_CHECK_FAILED;
  }
  return status;
}

}  // extern "C"
