#include "oddstop/models.hpp"

#include <algorithm>
#include <string>

namespace oddstop {

Rational harmonic_number(Index m) {
  if (m < 0) throw IndexOutOfRangeError(m);
  Rational h = 0;
  for (Index i = 1; i <= m; ++i) h += Rational(1, i);
  return h;
}

Rational secretary_odds_sum(Index k, Index n) {
  if (n < 1 || k > n || k < 1) throw IndexOutOfRangeError(k);
  if (k == 1) {
    throw InfiniteOddsError("index 1 of the secretary problem has p = 1");
  }
  return harmonic_number(n - 1) - harmonic_number(k - 2);
}

bool harmonic_difference_is_integer(Index k, Index n) {
  if (k < 0 || k >= n) throw IndexOutOfRangeError(k);
  const Rational diff = harmonic_number(n) - harmonic_number(k);
  const bool exact_route = is_integer(diff);

  bool valuation_route;
  if (n - k == 1) {
    valuation_route = n == 1;  // the single term 1/n
  } else {
    int max_pow = -1;
    int hits = 0;
    for (Index j = k + 1; j <= n; ++j) {
      const int pow = __builtin_ctzll(static_cast<unsigned long long>(j));
      if (pow > max_pow) {
        max_pow = pow;
        hits = 1;
      } else if (pow == max_pow) {
        ++hits;
      }
    }
    // Two or more terms always include an even denominator, and exactly one
    // denominator carries the top power of 2 (two would straddle a multiple
    // of the next power). That term forces a negative 2-adic valuation.
    if (max_pow < 1 || hits != 1) {
      throw InconsistentWithTheoremError(
          "highest power of 2 not unique among denominators " +
          std::to_string(k + 1) + ".." + std::to_string(n));
    }
    valuation_route = false;
  }

  if (exact_route != valuation_route) {
    throw InconsistentWithTheoremError(
        "harmonic integrality routes disagree for H(" + std::to_string(n) +
        ") - H(" + std::to_string(k) + ")");
  }
  return exact_route;
}

std::vector<CertificateRow> secretary_certificate(Index n_max) {
  if (n_max < 3) {
    throw PreconditionNotMetError("certificate requires n_max >= 3");
  }
  std::vector<CertificateRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max - 1));
  std::vector<Rational> odds_at_threshold;  // R(s(n), n) per row
  for (Index n = 2; n <= n_max; ++n) {
    const auto prob = secretary_problem<Rational>(n);
    const auto tables = SuffixTables<Rational>::build(prob);
    const auto sol = solve(prob, tables);
    // s >= 2 whenever n >= 2 (r_2 = 1 alone reaches the unit odds sum), so
    // the threshold odds sum is finite.
    const Rational r_s = tables.R[static_cast<std::size_t>(sol.s)].finite_value();
    if (r_s != secretary_odds_sum(sol.s, n)) {
      throw InconsistentWithTheoremError(
          "table odds sum and harmonic form disagree at n = " +
          std::to_string(n));
    }
    rows.push_back({n, sol.s, sol.value});
    odds_at_threshold.push_back(r_s);
  }

  for (Index n = 3; n < n_max; ++n) {
    const auto& cur = rows[static_cast<std::size_t>(n - 2)];
    const auto& next = rows[static_cast<std::size_t>(n - 1)];
    if (!(next.value < cur.value)) {
      throw CertificateFailureError(n, "V(n+1) is not strictly below V(n)");
    }
  }
  for (Index n = 3; n <= n_max; ++n) {
    const auto& cur = rows[static_cast<std::size_t>(n - 2)];
    const Rational& r_s = odds_at_threshold[static_cast<std::size_t>(n - 2)];
    if (r_s == 1) {
      throw CertificateFailureError(n, "R(s(n),n) = 1: dual threshold");
    }
    // Independent route: R(k,n) = H(n-1) - H(k-2) cannot be an integer
    // here, so in particular it cannot be 1.
    if (harmonic_difference_is_integer(cur.threshold - 2, n - 1)) {
      throw CertificateFailureError(n, "harmonic route reports an integral odds sum");
    }
    if (n < n_max) {
      const Index s_next = rows[static_cast<std::size_t>(n - 1)].threshold;
      if (s_next <= n) {
        if (secretary_odds_sum(s_next, n) == 1) {
          throw CertificateFailureError(n, "R(s(n+1),n) = 1");
        }
        if (harmonic_difference_is_integer(s_next - 2, n - 1)) {
          throw CertificateFailureError(n, "harmonic route reports an integral odds sum");
        }
      }
    }
  }
  return rows;
}

void validate_schedule(const Schedule& sched) {
  if (sched.sizes.empty()) {
    throw InfeasibleConstraintsError("schedule needs at least one group");
  }
  for (Index m : sched.sizes) {
    if (m < 1) {
      throw InfeasibleConstraintsError("group sizes must be >= 1");
    }
  }
}

namespace detail {

namespace {

void compositions(Index remaining, Index parts, std::vector<Index>& current,
                  std::vector<std::vector<Index>>& out, std::uint64_t cap) {
  if (parts == 1) {
    if (out.size() + 1 > cap) throw EnumerationCapError(out.size() + 1, cap);
    current.push_back(remaining);
    out.push_back(current);
    current.pop_back();
    return;
  }
  // First part from 1 upward keeps the output in lexicographic order.
  for (Index first = 1; first <= remaining - (parts - 1); ++first) {
    current.push_back(first);
    compositions(remaining - first, parts - 1, current, out, cap);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<Index>> schedule_tails(
    Index remaining, Index parts,
    const std::optional<std::vector<Index>>& pool, std::uint64_t cap) {
  std::vector<std::vector<Index>> tails;
  if (parts == 0) {
    tails.push_back({});
    return tails;
  }
  if (pool) {
    if (static_cast<Index>(pool->size()) != parts) {
      throw InfeasibleConstraintsError(
          "pool must contain exactly one size per remaining day");
    }
    Index pool_sum = 0;
    for (Index m : *pool) {
      if (m < 1) throw InfeasibleConstraintsError("pool sizes must be >= 1");
      pool_sum += m;
    }
    if (pool_sum != remaining) {
      throw InfeasibleConstraintsError(
          "pool sums to " + std::to_string(pool_sum) + ", expected " +
          std::to_string(remaining));
    }
    std::vector<Index> perm = *pool;
    std::sort(perm.begin(), perm.end());
    do {
      if (tails.size() + 1 > cap) throw EnumerationCapError(tails.size() + 1, cap);
      tails.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return tails;
  }
  std::vector<Index> current;
  compositions(remaining, parts, current, tails, cap);
  return tails;
}

}  // namespace detail

}  // namespace oddstop
