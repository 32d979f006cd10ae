#include "hyperham/thresholds.hpp"

#include "hyperham/constructions.hpp"
#include "hyperham/errors.hpp"

#include <algorithm>

namespace hyperham {

namespace {

void check_kdl(int k, int d, int ell) {
  if (k < 2) throw DomainError("k must be at least 2");
  if (ell < 1 || ell >= k) throw DomainError("need 1 <= ell < k");
  if (d < 1 || d > k - 1) throw DomainError("need 1 <= d <= k-1");
}

// floor(x^(1/q)) for x >= 0
BigInt integer_root(const BigInt& x, int q) {
  if (x < 2 || q == 1) return x;
  BigInt lo = 0, hi = 1;
  while (power(hi, static_cast<unsigned>(q)) <= x) hi *= 2;
  while (hi - lo > 1) {
    const BigInt mid = (lo + hi) / 2;
    if (power(mid, static_cast<unsigned>(q)) <= x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

Rational space_barrier_limit(int k, int d, int ell) {
  check_kdl(k, d, ell);
  const Rational base = 1 - Rational(1, 2 * (k - ell));
  return 1 - power(base, static_cast<unsigned>(k - d));
}

Rational thm11_value(int k, int ell) {
  if (k < 2 || ell < 1 || ell >= k) throw DomainError("need k > ell >= 1");
  const int s = k - ell;
  if (k % s == 0) return Rational(1, 2);
  const int blocks = (k + s - 1) / s;
  return Rational(1, blocks * s);
}

std::optional<Rational> known_t(int k, int d, int ell) {
  if (k == 5 && d == 2 && ell == 2) return Rational(91, 216);
  return std::nullopt;
}

ThresholdValue rational_value(const Rational& r) {
  ThresholdValue v;
  v.kind = ThresholdValue::Kind::rational;
  v.value = r;
  v.text = to_string(r);
  v.decimal = to_decimal(r);
  return v;
}

std::string two_power_decimal(int num, int den, int digits) {
  // floor(10^(digits+1) * 2^(-num/den)) = floor((10^((digits+1) den) / 2^num)^(1/den))
  const BigInt scale = power(BigInt(10), static_cast<unsigned>((digits + 1) * den));
  const BigInt inner = scale / power(BigInt(2), static_cast<unsigned>(num));
  const BigInt root = integer_root(inner, den);
  // root carries one guard digit; round half-up on it
  const BigInt rounded = (root + 5) / 10;
  return to_decimal(Rational(rounded, power(BigInt(10), static_cast<unsigned>(digits))), digits);
}

ThresholdValue two_power_value(int num, int den) {
  ThresholdValue v;
  v.kind = ThresholdValue::Kind::two_power;
  v.num = num;
  v.den = den;
  v.text = "2^(-" + std::to_string(num) + "/" + std::to_string(den) + ")";
  v.decimal = two_power_decimal(num, den);
  return v;
}

int compare_two_power(const Rational& a, int num, int den) {
  if (a <= 0) return -1;
  // a vs 2^(-num/den)  <=>  a^den * 2^num vs 1
  const Rational lhs = power(a, static_cast<unsigned>(den)) * power(Rational(2), static_cast<unsigned>(num));
  if (lhs < 1) return -1;
  if (lhs > 1) return 1;
  return 0;
}

UpperBound upper_bound_thm(int k, int d, int ell, const std::optional<Rational>& t_value, UpperForm form) {
  check_kdl(k, d, ell);
  if (form == UpperForm::automatic) form = d == ell ? UpperForm::thm15 : UpperForm::thm14;
  UpperBound out;
  out.form = form;
  if (form == UpperForm::thm14) {
    if (!(ell < d && 2 * ell < k)) throw RegimeError("the max{t, 1/3} form needs ell < d <= k-1 and ell < k/2");
  } else {
    if (!(d == ell && ell >= 2 && 2 * ell < k)) throw RegimeError("the 2^(-(k-ell)/ell) form needs d = ell and 2 <= ell < k/2");
  }
  out.t_lower = space_barrier_limit(k, d, ell);
  const Rational third(1, 3);
  if (!t_value) {
    ThresholdValue v;
    v.kind = ThresholdValue::Kind::symbolic;
    if (form == UpperForm::thm14) {
      v.text = "max{t(" + std::to_string(k) + "," + std::to_string(d) + "," + std::to_string(ell) + "),1/3}";
      v.value = std::max(out.t_lower, third);
    } else {
      v.text = "max{2^(-" + std::to_string(k - ell) + "/" + std::to_string(ell) + "),t(" + std::to_string(k) + "," +
               std::to_string(ell) + "," + std::to_string(ell) + ")}";
      v.value = out.t_lower;
    }
    out.bound = v;
    return out;
  }
  const Rational t = *t_value;
  if (t < 0) throw DomainError("t must be non-negative");
  if (form == UpperForm::thm14) {
    out.bound = rational_value(std::max(t, third));
  } else if (compare_two_power(t, k - ell, ell) >= 0) {
    out.bound = rational_value(t);
  } else {
    out.bound = two_power_value(k - ell, ell);
  }
  return out;
}

Cor16Check cor16_check(int k, int d, int ell) {
  check_kdl(k, d, ell);
  Cor16Check out;
  // 0.82 (k-ell) <= k-d  <=>  82 (k-ell) <= 100 (k-d)
  out.window = 82 * (k - ell) <= 100 * (k - d) && k - d < k - ell;
  out.barrier = space_barrier_limit(k, d, ell);
  out.barrier_above_third = out.barrier > Rational(1, 3);
  out.certified = out.window && out.barrier_above_third;
  const std::string lhs = "82*" + std::to_string(k - ell) + " <= 100*" + std::to_string(k - d);
  out.chain = lhs + (82 * (k - ell) <= 100 * (k - d) ? " holds" : " fails") + "; " + std::to_string(k - d) + " < " +
              std::to_string(k - ell) + (k - d < k - ell ? " holds" : " fails") + "; barrier " + to_string(out.barrier) +
              (out.barrier_above_third ? " > 1/3" : " <= 1/3");
  return out;
}

std::vector<ConvergenceRow> convergence_table(int k, int d, int ell, const std::vector<int>& n_list) {
  check_kdl(k, d, ell);
  const Rational limit = space_barrier_limit(k, d, ell);
  std::vector<ConvergenceRow> rows;
  for (int n : n_list) {
    SpaceBarrierSpec spec{k, ell, n};
    spec.check();
    ConvergenceRow row;
    row.n = n;
    row.ratio = space_barrier_min_degree(spec, d, false).normalized;
    row.limit = limit;
    row.gap = limit - row.ratio;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hyperham
