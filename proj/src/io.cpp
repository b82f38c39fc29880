#include "gruppen/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "gruppen/error.hpp"

namespace gruppen {

namespace {

constexpr std::string_view kBundleMagic = "gruppen-bundle 1";
constexpr std::string_view kTranscriptMagic = "gruppen-transcript 1";
constexpr std::string_view kGateMagic = "gruppen-gate 1";

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(std::move(w));
  return out;
}

unsigned to_unsigned(const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(text, &used);
    if (used != text.size()) throw UsageError("not an integer: " + text);
    return static_cast<unsigned>(v);
  } catch (const std::logic_error&) {
    throw UsageError("not an integer: " + text);
  }
}

std::vector<unsigned> parse_index_list(const std::string& text) {
  std::vector<unsigned> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) out.push_back(to_unsigned(item));
  return out;
}

std::string join(const std::vector<unsigned>& xs) {
  std::string out;
  for (unsigned x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out;
}

// Reads the "key value..." header shared by every format.
class HeaderReader {
 public:
  HeaderReader(std::string_view text, std::string_view magic, std::string_view what) : lines_(split_lines(text)) {
    if (lines_.empty() || lines_[0] != magic) throw UsageError("not a " + std::string(what) + " file");
    pos_ = 1;
  }

  std::vector<std::string> expect(const std::string& key) {
    while (pos_ < lines_.size() && lines_[pos_].empty()) ++pos_;
    if (pos_ >= lines_.size()) throw UsageError("missing '" + key + "' line");
    auto w = words(lines_[pos_]);
    if (w.empty() || w[0] != key) throw UsageError("expected '" + key + "' line, found '" + lines_[pos_] + "'");
    ++pos_;
    w.erase(w.begin());
    return w;
  }

  std::string single(const std::string& key) {
    auto w = expect(key);
    if (w.size() != 1) throw UsageError("'" + key + "' takes exactly one value");
    return w[0];
  }

  PointLayout layout() {
    const unsigned n = to_unsigned(single("n"));
    const unsigned k = to_unsigned(single("k"));
    FieldPtr spec = FieldSpec::parse(single("field"));
    const LayoutId id = parse_layout_id(single("layout"));
    return PointLayout(Params(n, k, std::move(spec)), id);
  }

  bool done() const { return pos_ >= lines_.size(); }
  const std::string& peek() const { return lines_[pos_]; }
  void skip() { ++pos_; }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

std::string header(std::string_view magic, const PointLayout& layout) {
  const Params& params = layout.params();
  std::string out(magic);
  out += "\nn " + std::to_string(params.n()) + "\nk " + std::to_string(params.k()) + "\nfield " +
         params.spec()->describe() + "\nlayout " + std::string(to_string(layout.id())) + "\n";
  return out;
}

}  // namespace

std::string format_bundle(const PointLayout& layout, const ParticipantBundle& bundle) {
  validate_bundle(layout, bundle);
  std::string out = header(kBundleMagic, layout);
  out += "participant " + std::to_string(bundle.participant) + "\n";
  out += "secret " + (bundle.secret ? bundle.secret->to_hex() : std::string("-")) + "\n";
  out += "share";
  for (const auto& v : bundle.share) out += " " + v.to_hex();
  return out + "\n";
}

BundleFile parse_bundle(std::string_view text) {
  HeaderReader in(text, kBundleMagic, "bundle");
  PointLayout layout = in.layout();
  const FieldPtr& spec = layout.params().spec();
  ParticipantBundle bundle;
  bundle.participant = to_unsigned(in.single("participant"));
  const std::string secret = in.single("secret");
  if (secret != "-") bundle.secret = FieldElement::from_hex(spec, secret);
  for (const auto& hex : in.expect("share")) bundle.share.push_back(FieldElement::from_hex(spec, hex));
  validate_bundle(layout, bundle);
  return {std::move(layout), std::move(bundle)};
}

std::vector<FieldElement> parse_secrets(const FieldPtr& spec, std::string_view text) {
  std::vector<FieldElement> out;
  for (auto line : split_lines(text)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto w = words(line);
    if (w.empty()) continue;
    if (w.size() != 1) throw UsageError("secrets file: one value per line expected, got '" + line + "'");
    out.push_back(FieldElement::from_hex(spec, w[0]));
  }
  return out;
}

std::string format_transcript(const Transcript& t) {
  std::string out = header(kTranscriptMagic, t.layout);
  out += "seeds";
  for (auto s : t.seeds) out += " " + std::to_string(s);
  out += "\n";
  for (const auto& s : t.sessions) {
    out += "session " + std::to_string(s.id);
    if (s.kind == SessionKind::setup) {
      out += " setup\n";
    } else {
      out += " recovery mode=" + std::string(to_string(s.recovery.mode)) + " requester=" +
             std::to_string(s.recovery.requester) + " quorum=" + join(s.recovery.quorum) + "\n";
    }
  }
  for (const auto& e : t.entries) out += "msg " + std::to_string(e.step) + " " + encode_message(e.message) + "\n";
  return out;
}

Transcript parse_transcript(std::string_view text) {
  HeaderReader in(text, kTranscriptMagic, "transcript");
  Transcript t{in.layout(), {}, {}, {}};
  for (const auto& s : in.expect("seeds")) t.seeds.push_back(std::stoull(s));
  while (!in.done()) {
    const std::string line = in.peek();
    in.skip();
    auto w = words(line);
    if (w.empty()) continue;
    if (w[0] == "session") {
      if (w.size() < 3) throw UsageError("malformed session line: " + line);
      SessionRecord rec;
      rec.id = to_unsigned(w[1]);
      if (w[2] == "setup") {
        rec.kind = SessionKind::setup;
      } else if (w[2] == "recovery" && w.size() == 6) {
        std::map<std::string, std::string> kv;
        for (std::size_t i = 3; i < w.size(); ++i) {
          auto eq = w[i].find('=');
          if (eq == std::string::npos) throw UsageError("malformed session field: " + w[i]);
          kv[w[i].substr(0, eq)] = w[i].substr(eq + 1);
        }
        rec.kind = SessionKind::recovery;
        rec.recovery = {rec.id, to_unsigned(kv.at("requester")), parse_index_list(kv.at("quorum")),
                        parse_recovery_mode(kv.at("mode"))};
      } else {
        throw UsageError("malformed session line: " + line);
      }
      t.sessions.push_back(std::move(rec));
    } else if (w[0] == "msg") {
      std::istringstream rest(line);
      std::string tag, step, body;
      rest >> tag >> step;
      std::getline(rest, body);
      t.entries.push_back({to_unsigned(step), decode_message(t.layout.params().spec(), body)});
    } else {
      throw UsageError("unexpected transcript line: " + line);
    }
  }
  return t;
}

std::string format_gate(const RecoveryGate& gate) {
  std::string out = header(kGateMagic, gate.layout());
  for (const auto& s : gate.history()) out += "naive " + std::to_string(s.requester) + " " + join(s.quorum) + "\n";
  return out;
}

RecoveryGate parse_gate(const PointLayout& layout, std::string_view text) {
  HeaderReader in(text, kGateMagic, "gate state");
  const PointLayout recorded = in.layout();
  if (!(analysis_layout(recorded) == analysis_layout(layout)))
    throw UsageError("gate state was recorded for different parameters");
  RecoveryGate gate(layout);
  unsigned id = 1;
  while (!in.done()) {
    auto w = words(in.peek());
    in.skip();
    if (w.empty()) continue;
    if (w.size() != 3 || w[0] != "naive") throw UsageError("malformed gate line");
    gate.record({id++, to_unsigned(w[1]), parse_index_list(w[2]), RecoveryMode::naive});
  }
  return gate;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::string bundle_file_name(unsigned participant) { return "bundle_" + std::to_string(participant) + ".txt"; }

}  // namespace gruppen
