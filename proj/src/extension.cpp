#include "vopa/extension.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace vopa {

namespace {

void require_params(int n, int r) {
  if (n < 2) throw Error("extension parameter n must be at least 2");
  if (r < 1) throw Error("extension parameter r must be at least 1");
}

}  // namespace

GateReport gates(int n, int r) {
  require_params(n, r);
  GateReport g;
  g.n = n;
  g.r = r;
  long g_base = std::gcd(n + 1, n + r);
  long g_low = std::gcd(n - 1, n + 1);
  long g_high = std::gcd(n - 1, n + r);
  g.base = g_base == 1;
  g.nr_even = (static_cast<long>(n) * r) % 2 == 0;
  g.theorem = g_low == 1 || g_high == 1;
  std::ostringstream os;
  os << "gcd(n+1, n+r) = " << g_base << ", gcd(n-1, n+1) = " << g_low
     << ", gcd(n-1, n+r) = " << g_high;
  g.detail = os.str();
  return g;
}

LevelData levels(int n, int r) {
  require_params(n, r);
  LevelData l;
  l.ell = Rational(n + r, n + 1) - Rational(n);
  if (r == 1) throw Error("conjugate level has a pole at r = 1");
  l.k_conj = Rational(n + r, r - 1) - Rational(r);
  return l;
}

SimpleCurrentData simple_current_data(int n, int r) {
  require_params(n, r);
  SimpleCurrentData d;
  d.conf_dim = Rational(static_cast<long>(n - 1) * r, 2L * n);
  d.qdim = (r % 2 == 0) ? 1 : -1;
  d.lattice_generator_weight = Rational(r, 2L * n);
  return d;
}

ExtensionData extension_decomposition(int n, int r) {
  require_params(n, r);
  ExtensionData d;
  d.n = n;
  d.r = r;
  d.gate = gates(n, r);
  if (!d.gate.theorem)
    throw Error("simple current extension is not available: the theorem gate "
                "fails (" + d.gate.detail + ")");
  LevelData l = levels(n, r);
  d.ell = l.ell;
  d.k_conj = l.k_conj;
  d.lattice_scale = static_cast<long>(n) * r;
  for (int s = 0; s < n; ++s) {
    Summand m;
    m.s = s;
    m.lattice_coset_weight = Rational(static_cast<long>(r) * s * s, 2L * n);
    m.simple_current_weight =
        Rational(static_cast<long>(r) * s * (n - s), 2L * n);
    Rational left(static_cast<long>(s) * r, 2);
    Rational right(static_cast<long>(n - s) * r, 2);
    m.lowest_weight = std::min(left, right);
    d.summands.push_back(m);
  }
  d.integer_graded = r % 2 == 0;
  d.qdim_generator = (r % 2 == 0) ? 1 : -1;
  return d;
}

BoundaryData boundary_ope_data(int n) {
  if (n < 2) throw Error("extension parameter n must be at least 2");
  BoundaryData b;
  Polynomial prod(Rational(1));
  for (long i = 1; i <= n - 1; ++i) {
    // i(k + n - 1) - 1 = i k + (i(n-1) - 1)
    prod *= Polynomial(
        std::vector<Rational>{Rational(i * (n - 1) - 1), Rational(i)});
  }
  b.pairing_constant = RationalFunction(prod);
  b.heis_level = RationalFunction(Polynomial(
      std::vector<Rational>{Rational(n - 2), Rational(n - 1, n)}));
  return b;
}

}  // namespace vopa
