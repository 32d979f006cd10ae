#pragma once

#include "hyperham/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyperham {

// 1 - (1 - 1/(2(k-ell)))^(k-d).
Rational space_barrier_limit(int k, int d, int ell);

// 1/2 when (k-ell) | k, else 1/(ceil(k/(k-ell)) (k-ell)).
Rational thm11_value(int k, int ell);

// Tiling threshold values that are known exactly; only (5,2,2) = 91/216.
std::optional<Rational> known_t(int k, int d, int ell);

// A threshold answer: an exact rational, the irrational 2^(-num/den), or a
// max involving the unknown t with its known rational lower bound.
struct ThresholdValue {
  enum class Kind { rational, two_power, symbolic };
  Kind kind = Kind::rational;
  Rational value;  // rational kind; lower bound for symbolic
  int num = 0;
  int den = 1;
  std::string text;
  std::string decimal;  // 12 digits; empty for symbolic
};

ThresholdValue rational_value(const Rational& r);
ThresholdValue two_power_value(int num, int den);

// Compares a >= 0 with 2^(-num/den) exactly: -1, 0 or 1 as a is smaller,
// equal or larger.
int compare_two_power(const Rational& a, int num, int den);

// 12-digit decimal of 2^(-num/den), rounded half-up, from integer roots.
std::string two_power_decimal(int num, int den, int digits = 12);

enum class UpperForm { automatic, thm14, thm15 };

struct UpperBound {
  UpperForm form = UpperForm::thm14;
  ThresholdValue bound;
  Rational t_lower;  // barrier lower bound on t
};

// ell < d <= k-1, ell < k/2: max{t, 1/3}.
// d = ell, 2 <= ell < k/2: max{2^(-(k-ell)/ell), t}.
// Without t the answer is symbolic. Throws RegimeError outside the form's
// hypotheses.
UpperBound upper_bound_thm(int k, int d, int ell, const std::optional<Rational>& t_value,
                           UpperForm form = UpperForm::automatic);

struct Cor16Check {
  bool window = false;           // 0.82 (k-ell) <= k-d < k-ell
  Rational barrier;              // space_barrier_limit(k, d, ell)
  bool barrier_above_third = false;
  bool certified = false;        // window and barrier > 1/3
  std::string chain;
};

Cor16Check cor16_check(int k, int d, int ell);

struct ConvergenceRow {
  int n = 0;
  Rational ratio;  // barrier min degree / C(n, k-d)
  Rational limit;
  Rational gap;    // limit - ratio
};

std::vector<ConvergenceRow> convergence_table(int k, int d, int ell, const std::vector<int>& n_list);

}  // namespace hyperham
