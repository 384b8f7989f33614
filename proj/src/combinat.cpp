#include "cheb/combinat.hpp"

#include <array>
#include <string>

#include "cheb/error.hpp"

namespace cheb::combinat {

mpz_class mu(unsigned r) {
  if (r % 2 == 1) return 0;
  mpz_class out = 1;
  for (unsigned k = r; k >= 3; k -= 2) out *= (k - 1);
  return out;
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

mpz_class h_formula(unsigned s) {
  mpz_class sum = 0;
  for (unsigned j = 0; j <= s; ++j) {
    mpz_class term = binomial(s, j) * mu(2 * j);
    if ((s - j) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

std::vector<mpz_class> h_sequence(unsigned s_max) {
  std::vector<mpz_class> h(s_max + 1);
  h[0] = 1;
  if (s_max >= 1) h[1] = 0;
  for (unsigned s = 0; s + 2 <= s_max; ++s) h[s + 2] = 2 * (s + 1) * (h[s + 1] + h[s]);
  return h;
}

mpz_class h_recurrence(unsigned s) { return h_sequence(s).back(); }

namespace {

// Points are numbered 2j (= (j,1)) and 2j+1 (= (j,2)). Pair the smallest
// unmatched point with every admissible partner and recurse.
std::uint64_t count_matchings(std::array<bool, 2 * kBruteForceMaxS>& used, unsigned n) {
  unsigned first = 0;
  while (first < n && used[first]) ++first;
  if (first == n) return 1;
  used[first] = true;
  std::uint64_t total = 0;
  for (unsigned partner = first + 1; partner < n; ++partner) {
    if (used[partner]) continue;
    if (first % 2 == 0 && partner == first + 1) continue;
    used[partner] = true;
    total += count_matchings(used, n);
    used[partner] = false;
  }
  used[first] = false;
  return total;
}

}  // namespace

std::uint64_t h_bruteforce(unsigned s) {
  if (s > kBruteForceMaxS) {
    throw Error(ErrorCode::BruteForceTooLarge,
                "s = " + std::to_string(s) + " exceeds " + std::to_string(kBruteForceMaxS));
  }
  std::array<bool, 2 * kBruteForceMaxS> used{};
  return count_matchings(used, 2 * s);
}

double h_asymptotic_ratio(unsigned s) {
  mpq_class ratio(h_recurrence(s), mu(2 * s));
  ratio.canonicalize();
  return ratio.get_d();
}

}  // namespace cheb::combinat
