#include "vopa/basis.hpp"

#include <algorithm>

namespace vopa {

namespace {

void extend(const Presentation& p, const std::vector<int>& alphabet, HalfInt remaining,
            int charge_target, int charge_so_far, Word& current, std::vector<Word>& out) {
  if (remaining.twice() == 0) {
    if (charge_so_far == charge_target) out.push_back(current);
    return;
  }
  if (remaining.twice() < 0) return;
  // Letters must be non-decreasing: same generator only with derivative
  // order at most that of the previous letter, later generators freely.
  // Copy the last letter; recursion reallocates the vector.
  const bool has_last = !current.letters.empty();
  const Letter last = has_last ? current.letters.back() : Letter{};
  for (int g : alphabet) {
    if (has_last && g < last.gen) continue;
    int dmax = (remaining - p.gen(g).weight).floor();
    if (has_last && g == last.gen && dmax > last.der) dmax = last.der;
    for (int d = dmax; d >= 0; --d) {
      current.letters.push_back(Letter{d, g});
      extend(p, alphabet, remaining - p.gen(g).weight - HalfInt(d), charge_target,
             charge_so_far + p.gen(g).charge, current, out);
      current.letters.pop_back();
    }
  }
}

}  // namespace

WeightBasis enumerate_basis(const Presentation& p, HalfInt weight, int charge,
                            const std::vector<int>& alphabet) {
  std::vector<int> alpha = alphabet;
  if (alpha.empty())
    for (int g = 0; g < p.num_generators(); ++g) alpha.push_back(g);
  std::sort(alpha.begin(), alpha.end());
  WeightBasis b;
  b.weight = weight;
  b.charge = charge;
  if (weight.twice() >= 0) {
    Word scratch;
    extend(p, alpha, weight, charge, 0, scratch, b.words);
  }
  std::sort(b.words.begin(), b.words.end(), basis_less);
  for (int i = 0; i < static_cast<int>(b.words.size()); ++i) b.index[b.words[i]] = i;
  return b;
}

std::vector<Coeff> coordinates(const Presentation& p, const Expression& e,
                               const WeightBasis& basis) {
  std::vector<Coeff> v(basis.words.size());
  for (const auto& [w, c] : e) {
    auto it = basis.index.find(w);
    if (it == basis.index.end())
      throw Error("term " + p.show(w) + " lies outside the weight-" + basis.weight.str() +
                  " charge-" + std::to_string(basis.charge) + " basis");
    v[it->second] = c;
  }
  return v;
}

}  // namespace vopa
