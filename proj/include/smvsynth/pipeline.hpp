#pragma once

// The end-to-end steps the command-line tool chains together.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smvsynth/aig.hpp"

namespace smvsynth {

// Parses, resolves and flattens the specification, loads its automata
// (paths relative to `base_dir`), and compiles the extended-format game.
aig::AigerDoc spec_to_aag(std::string_view text, const std::filesystem::path& base_dir,
                          std::vector<std::string>* warnings = nullptr);
aig::AigerDoc spec_file_to_aag(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

// justice_to_safety, with GF TRUE assumed when the doc has no justice.
aig::AigerDoc to_standard(const aig::AigerDoc& doc, unsigned k);

struct SynthResult {
    bool realizable = false;
    std::optional<aig::AigerDoc> model;
};

SynthResult synthesize(const aig::AigerDoc& game, bool extract = true);

}  // namespace smvsynth
