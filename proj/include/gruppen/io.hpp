#pragma once

// Line-oriented text formats: participant bundles, secrets lists,
// transcripts and recovery-gate state.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gruppen/harness.hpp"
#include "gruppen/knowledge.hpp"
#include "gruppen/scheme.hpp"

namespace gruppen {

struct BundleFile {
  PointLayout layout;
  ParticipantBundle bundle;
};

// gruppen-bundle 1 / n / k / field / layout / participant / secret (hex or -) / share
std::string format_bundle(const PointLayout& layout, const ParticipantBundle& bundle);
BundleFile parse_bundle(std::string_view text);

// One hex value per line; blank lines and '#' comments are skipped.
std::vector<FieldElement> parse_secrets(const FieldPtr& spec, std::string_view text);

std::string format_transcript(const Transcript& transcript);
Transcript parse_transcript(std::string_view text);

std::string format_gate(const RecoveryGate& gate);
// Replays the recorded naive recoveries into a fresh gate for `layout`.
RecoveryGate parse_gate(const PointLayout& layout, std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

std::string bundle_file_name(unsigned participant);

}  // namespace gruppen
