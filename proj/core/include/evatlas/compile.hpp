#pragma once

// End-to-end compiler: parsed evidence cards -> validated objects ->
// canonical claims -> buckets -> atlas. The build digest is computed from the
// serialized config plus the canonical card serializations sorted by card id,
// before any parallel work, so the worker count never shows up in output.

#include "evatlas/atlas.hpp"
#include "evatlas/card.hpp"
#include "evatlas/config.hpp"

#include <cstddef>
#include <vector>

namespace evatlas {

struct CompileOptions {
    std::size_t jobs = 1;  // >1 canonicalizes in parallel; output is identical
};

// Throws CompileError on duplicate card ids. Per-claim problems (validation
// violations, nonpositive ratio inputs) become entries in report.rejected.
Atlas compile_corpus(const std::vector<ParsedCard>& cards, const BuildConfig& cfg,
                     const CompileOptions& options = {});

// Digest over (config, corpus) alone; exposed for tests and the CLI.
std::string corpus_digest(const std::vector<ParsedCard>& cards, const BuildConfig& cfg);

} // namespace evatlas
