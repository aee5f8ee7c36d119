#pragma once

// Enumeration of the canonical normally ordered words spanning one
// (weight, charge) slice, and coordinates of states against such a basis.

#include "vopa/presentation.hpp"

namespace vopa {

struct WeightBasis {
  HalfInt weight;
  int charge = 0;
  std::vector<Word> words;  // in basis order
  std::map<Word, int> index;
  int dim() const { return static_cast<int>(words.size()); }
};

// All canonical words of the given weight and charge over the alphabet
// (generator indices; empty means every generator). Finite because generator
// weights are strictly positive.
WeightBasis enumerate_basis(const Presentation& p, HalfInt weight, int charge,
                            const std::vector<int>& alphabet = {});

// Coordinates of e against the basis. The expression must already be in
// canonical form; a word outside the basis is an error naming the word.
std::vector<Coeff> coordinates(const Presentation& p, const Expression& e,
                               const WeightBasis& basis);

}  // namespace vopa
