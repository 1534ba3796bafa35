#pragma once

// Line-oriented algebra description format and the bundled corpus.
//
//   char <p>
//   n <k>
//   vertices <count>
//   arrow <name> <src> <tgt>          (1-based vertices)
//   relation [<coeff>*]<path> [+|- [<coeff>*]<path> ...]   paths like b.a
//   module_M <label>=<d1,d2,...>      (optional declared cluster tilting set)
//
// '#' starts a comment; blank lines are ignored.

#include <stdexcept>
#include <string>
#include <vector>

#include "ntors/quiver.hpp"

namespace ntors {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlgebraSpecFile {
    std::string name;
    QuiverPresentation pres;
    std::vector<std::pair<std::string, std::vector<int>>> declared_M;
};

AlgebraSpecFile parse_spec(const std::string& text, const std::string& name = "input");

struct CorpusEntry {
    std::string name;
    std::string text;
};
const std::vector<CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(const std::string& name);

} // namespace ntors
