#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ringlab/expr.hpp"

namespace ringlab {

// Declarative corpus: expression templates with parameter ranges, expanded
// deterministically (families in order, parameters lexicographic by name,
// values in listed order).
struct CorpusSpec {
    struct Family {
        std::string expr;  // template, e.g. "GrpRing(Zmod($n), C(2))"
        std::map<std::string, std::vector<std::string>> params;
        std::size_t max_size = 0;  // 0 = no per-family bound
    };

    std::vector<Family> families;
    std::size_t size_cap = caps::max_ring_size;
    bool quotients_by_j = false;  // append Quot(e) for every expanded e
    std::vector<int> n_range = {1, 2, 3, 4, 5, 6, 7, 8};
    std::uint64_t seed = caps::axiom_sample_seed;
};

// The built-in corpus covering every family the theorem suite exercises.
CorpusSpec default_corpus();

// TOML-style subset:
//   top-level:  n_range = 1..8      quotients_by_j = true    size_cap = 4096
//   [[family]]
//   expr = "Zmod($n)"
//   n = 2..32            # or: n = "2,3,5"
//   max_size = 256
CorpusSpec parse_corpus_file(const std::string& path);
CorpusSpec parse_corpus_text(const std::string& text);

// Deterministic expansion to parsed expressions; entries whose predicted
// size exceeds the caps are dropped (never errors).
std::vector<ExprPtr> expand_corpus(const CorpusSpec& spec);

}  // namespace ringlab
