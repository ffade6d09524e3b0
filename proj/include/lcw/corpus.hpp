#pragma once

#include <string>
#include <vector>

#include "lcw/structure.hpp"

namespace lcw {

struct CorpusEntry {
  std::string name;
  std::string note;
  FiniteStructure structure;
};

/// name in {M2, U2, DC3, DC3-open, C8, singleton}; throws on unknown names.
CorpusEntry load_corpus(const std::string& name);

std::vector<std::string> corpus_names();

/// Parses the sectioned structure file format (SIGNATURE, POINTS, METRIC
/// as lower-triangular rows, INTERP, MODE) and validates the result;
/// throws std::invalid_argument with the validation report on failure.
FiniteStructure parse_structure_file(const std::string& text,
                                     bool validate = true);

FiniteStructure load_structure_file(const std::string& path);

}  // namespace lcw
