// gruppen: command-line front end over the C API.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gruppen/gruppen.h"

namespace {

struct Failure {
  gruppen_status status;
  std::string message;
};

void check(gruppen_status status) {
  if (status != GRUPPEN_OK) throw Failure{status, gruppen_last_error()};
}

struct StringDeleter {
  void operator()(char* s) const { gruppen_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

template <class T, void (*Destroy)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
  Handle& operator=(Handle&& o) noexcept {
    std::swap(ptr, o.ptr);
    return *this;
  }
  ~Handle() { Destroy(ptr); }
};

using Params = Handle<gruppen_params, gruppen_params_destroy>;
using Dealing = Handle<gruppen_dealing, gruppen_dealing_destroy>;
using Bundle = Handle<gruppen_bundle, gruppen_bundle_destroy>;
using TranscriptH = Handle<gruppen_transcript, gruppen_transcript_destroy>;

void emit(char* s) {
  CString owned(s);
  std::cout << owned.get();
}

std::vector<std::string> read_secrets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{GRUPPEN_ERR_IO, "cannot read " + path};
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word;
    if (words >> word) out.push_back(word);
  }
  return out;
}

std::vector<const char*> c_strings(const std::vector<std::string>& xs) {
  std::vector<const char*> out;
  for (const auto& x : xs) out.push_back(x.c_str());
  return out;
}

std::vector<Bundle> read_bundles(const std::vector<std::string>& paths) {
  std::vector<Bundle> out;
  for (const auto& p : paths) {
    Bundle b;
    check(gruppen_bundle_read(p.c_str(), &b.ptr));
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<const gruppen_bundle*> raw(const std::vector<Bundle>& bundles) {
  std::vector<const gruppen_bundle*> out;
  for (const auto& b : bundles) out.push_back(b.ptr);
  return out;
}

struct Common {
  unsigned n = 0;
  unsigned k = 0;
  std::string field;
  std::string layout;
  std::uint64_t seed = 1;
};

void add_params(CLI::App* cmd, Common& c, bool required) {
  auto* n = cmd->add_option("--n", c.n, "number of participants");
  auto* k = cmd->add_option("--k", c.k, "recovery threshold");
  auto* f = cmd->add_option("--field", c.field, "p=<prime> or gf2=<s>[:<poly hex>]");
  if (required) {
    n->required();
    k->required();
    f->required();
  }
  cmd->add_option("--layout", c.layout, "participant-major | secrets-first | compact");
}

Params make_params(const Common& c, const char* fallback_layout = nullptr) {
  Params p;
  const char* layout = c.layout.empty() ? fallback_layout : c.layout.c_str();
  check(gruppen_params_create(c.n, c.k, c.field.c_str(), layout, &p.ptr));
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-out-of-n multiple-secret sharing: dealing, recovery and analysis"};
  app.require_subcommand(1);

  Common c;
  std::string out_dir;
  std::string secrets_file;
  std::vector<std::string> files;

  auto* deal = app.add_subcommand("deal", "deal shares of n secrets from one polynomial");
  add_params(deal, c, true);
  deal->add_option("--seed", c.seed, "randomness seed");
  deal->add_option("--out", out_dir, "output directory for bundle files")->required();
  deal->add_option("--secrets", secrets_file, "one hex secret per line (random when omitted)");

  auto* reconstruct = app.add_subcommand("reconstruct", "recover all secrets from k bundles");
  reconstruct->add_option("files", files, "bundle files")->required();

  unsigned requester = 0;
  std::vector<unsigned> quorum;
  std::string mode = "masked";
  std::string gate_state;
  auto* recover = app.add_subcommand("recover", "restore a participant's lost state from a quorum");
  recover->add_option("--requester", requester, "participant who lost its state")->required();
  recover->add_option("--quorum", quorum, "k helpers, comma separated")->required()->delimiter(',');
  recover->add_option("--mode", mode, "naive | masked | full-state");
  recover->add_option("--seed", c.seed, "randomness seed");
  recover->add_option("--out", out_dir, "directory for transcript.txt and gate.state")->required();
  recover->add_option("--gate-state", gate_state, "gate state file (default <out>/gate.state)");
  recover->add_option("files", files, "bundle files of the quorum (and the requester)")->required();

  auto* setup = app.add_subcommand("setup", "dealerless distribution of shares");
  add_params(setup, c, true);
  setup->add_option("--secrets", secrets_file, "one hex secret per participant")->required();
  setup->add_option("--seed", c.seed, "randomness seed");
  setup->add_option("--out", out_dir, "output directory for bundles and transcript")->required();

  std::string transcript_file;
  std::vector<unsigned> coalition;
  std::vector<unsigned> grants;
  std::string check_name = "rank";
  std::string scheme = "gruppen";
  auto* analyze = app.add_subcommand("analyze", "what a coalition learns, or exhaustive scheme checks");
  add_params(analyze, c, false);
  analyze->add_option("--transcript", transcript_file, "transcript file");
  analyze->add_option("--coalition", coalition, "coalition members, comma separated")->delimiter(',');
  analyze->add_option("--grant", grants, "secrets granted to the coalition")->delimiter(',');
  analyze->add_option("--check", check_name, "rank | entropy | perfectness");
  analyze->add_option("--scheme", scheme, "gruppen | xor-sabotage");
  analyze->add_option("files", files, "bundle files (rank check without a transcript)");

  std::string demo_field = "p=13";
  auto* demo = app.add_subcommand("demo-leak", "walk through the naive-recovery leak on n=3, k=2");
  demo->add_option("--field", demo_field, "prime field");
  demo->add_option("--seed", c.seed, "randomness seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : GRUPPEN_ERR_USAGE;
  }

  try {
    if (*deal) {
      Params params = make_params(c);
      Dealing d;
      if (secrets_file.empty()) {
        check(gruppen_deal(params.ptr, c.seed, nullptr, 0, &d.ptr));
      } else {
        const auto secrets = read_secrets(secrets_file);
        const auto ptrs = c_strings(secrets);
        check(gruppen_deal(params.ptr, c.seed, ptrs.data(), ptrs.size(), &d.ptr));
      }
      check(gruppen_dealing_write(d.ptr, out_dir.c_str()));
      char* summary = nullptr;
      check(gruppen_dealing_summary(d.ptr, &summary));
      emit(summary);
      std::cout << "wrote " << c.n << " bundles to " << out_dir << "\n";
    } else if (*reconstruct) {
      const auto bundles = read_bundles(files);
      const auto ptrs = raw(bundles);
      char* report = nullptr;
      check(gruppen_reconstruct(ptrs.data(), ptrs.size(), &report));
      emit(report);
    } else if (*recover) {
      const auto bundles = read_bundles(files);
      const auto ptrs = raw(bundles);
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) throw Failure{GRUPPEN_ERR_IO, "cannot create " + out_dir + ": " + ec.message()};
      const std::string gate = gate_state.empty() ? (std::filesystem::path(out_dir) / "gate.state").string() : gate_state;
      char* report = nullptr;
      TranscriptH t;
      check(gruppen_recover(ptrs.data(), ptrs.size(), requester, quorum.data(), quorum.size(), mode.c_str(), c.seed,
                            gate.c_str(), &report, &t.ptr));
      const std::string path = (std::filesystem::path(out_dir) / "transcript.txt").string();
      check(gruppen_transcript_write(t.ptr, path.c_str()));
      emit(report);
      std::cout << "transcript " << path << "\n";
    } else if (*setup) {
      Params params = make_params(c);
      const auto secrets = read_secrets(secrets_file);
      const auto ptrs = c_strings(secrets);
      Dealing d;
      TranscriptH t;
      check(gruppen_setup(params.ptr, c.seed, ptrs.data(), ptrs.size(), &d.ptr, &t.ptr));
      check(gruppen_dealing_write(d.ptr, out_dir.c_str()));
      const std::string path = (std::filesystem::path(out_dir) / "transcript.txt").string();
      check(gruppen_transcript_write(t.ptr, path.c_str()));
      char* summary = nullptr;
      check(gruppen_dealing_summary(d.ptr, &summary));
      emit(summary);
      std::cout << "wrote " << c.n << " bundles and transcript to " << out_dir << "\n";
    } else if (*analyze) {
      if (check_name == "rank") {
        TranscriptH t;
        if (!transcript_file.empty()) {
          check(gruppen_transcript_read(transcript_file.c_str(), &t.ptr));
        } else {
          Params params;
          if (!files.empty()) {
            const auto bundles = read_bundles(files);
            check(gruppen_bundle_params(bundles.front().ptr, &params.ptr));
            // Bundle files name the default coalition.
            if (coalition.empty())
              for (const auto& b : bundles) coalition.push_back(gruppen_bundle_participant(b.ptr));
          } else if (!c.field.empty()) {
            params = make_params(c);
          } else {
            throw Failure{GRUPPEN_ERR_USAGE, "rank check needs --transcript, bundle files or --n/--k/--field"};
          }
          check(gruppen_transcript_create(params.ptr, &t.ptr));
        }
        char* report = nullptr;
        check(gruppen_analyze_transcript(t.ptr, coalition.data(), coalition.size(), grants.data(), grants.size(),
                                         &report, nullptr));
        emit(report);
      } else {
        if (c.field.empty() || c.n == 0 || c.k == 0)
          throw Failure{GRUPPEN_ERR_USAGE, check_name + " check needs --n, --k and --field"};
        Params params = make_params(c, "compact");
        char* report = nullptr;
        const gruppen_status status = gruppen_analyze_scheme(params.ptr, scheme.c_str(), check_name.c_str(), &report);
        if (status != GRUPPEN_OK && status != GRUPPEN_CHECK_FAILED) check(status);
        emit(report);
        return status;
      }
    } else if (*demo) {
      char* report = nullptr;
      const gruppen_status status = gruppen_demo_leak(demo_field.c_str(), c.seed, &report);
      if (status != GRUPPEN_OK && status != GRUPPEN_CHECK_FAILED) check(status);
      emit(report);
      return status;
    }
  } catch (const Failure& f) {
    std::cerr << "gruppen: " << gruppen_status_name(f.status) << ": " << f.message << "\n";
    return f.status;
  }
  return 0;
}
