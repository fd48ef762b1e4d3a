#pragma once

// Exact exponent algebra for the inequality catalog. Integrability exponents
// are carried as reciprocals (1/p, with 0 meaning p = inf) so every relation
// is linear and stays in the rationals.

#include <compare>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fracgn/error.hpp"
#include "fracgn/norms.hpp"

namespace fracgn {

/// Exact fraction in lowest terms with a positive denominator. Overflow is
/// reported rather than wrapped; catalog exponents stay tiny.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(long long n, long long d = 1) : num_(n), den_(d) {
    require(d != 0, ErrorCode::invalid_argument, "zero denominator");
    normalize();
  }

  long long numerator() const { return num_; }
  long long denominator() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)), checked_mul(a.den_, b.den_));
  }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    require(b.num_ != 0, ErrorCode::invalid_argument, "division by zero");
    return Rational(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return checked_mul(a.num_, b.den_) <=> checked_mul(b.num_, a.den_);
  }

 private:
  static long long checked_mul(long long a, long long b) {
    long long r = 0;
    require(!__builtin_mul_overflow(a, b, &r), ErrorCode::invalid_argument, "rational overflow");
    return r;
  }
  static long long checked_add(long long a, long long b) {
    long long r = 0;
    require(!__builtin_add_overflow(a, b, &r), ErrorCode::invalid_argument, "rational overflow");
    return r;
  }
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const long long g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline const Rational kZero{0};
inline const Rational kOne{1};

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

/// "0.25", "3/4", "2", "-1.5" -> exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return Error(ErrorCode::invalid_argument, "not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational a = parse_rational(text.substr(0, slash)), b = parse_rational(text.substr(slash + 1));
    if (b == kZero) throw fail();
    return a / b;
  }
  bool neg = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    i = 1;
  }
  long long num = 0, den = 1;
  bool dot = false, digits = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' && !dot) {
      dot = true;
      continue;
    }
    if (c < '0' || c > '9') throw fail();
    digits = true;
    num = num * 10 + (c - '0');
    if (dot) den *= 10;
    if (num > 1'000'000'000'000LL || den > 1'000'000'000'000LL) throw fail();
  }
  if (!digits) throw fail();
  return Rational(neg ? -num : num, den);
}

/// Integrability exponent text ("2", "inf", "8/3") -> reciprocal 1/p.
inline Rational parse_reciprocal(std::string_view text) {
  if (text == "inf" || text == "infinity") return Rational(0);
  const Rational p = parse_rational(text);
  require(p >= kOne, ErrorCode::invalid_argument, "integrability exponent must be >= 1, got " + std::string(text));
  return Rational(1) / p;
}

inline std::string reciprocal_to_string(const Rational& ip) { return ip == kZero ? "inf" : to_string(Rational(1) / ip); }
inline double reciprocal_to_p(const Rational& ip) { return ip == kZero ? kInf : to_double(Rational(1) / ip); }

enum class CaseId {
  thm1_2, thm1_3, lem3_2, lem3_5, eq1_1a, eq1_21, eq1_0,
  eq2_m3, eq2_m2, eq2_m4, eq2_0a, eq2_0b, eq2_3, gn_classic
};

inline constexpr CaseId kAllCases[] = {CaseId::thm1_2, CaseId::thm1_3, CaseId::lem3_2, CaseId::lem3_5, CaseId::eq1_1a,
                                       CaseId::eq1_21, CaseId::eq1_0,  CaseId::eq2_m3, CaseId::eq2_m2, CaseId::eq2_m4,
                                       CaseId::eq2_0a, CaseId::eq2_0b, CaseId::eq2_3,  CaseId::gn_classic};

inline std::string_view to_string(CaseId c) {
  switch (c) {
    case CaseId::thm1_2: return "thm1_2";
    case CaseId::thm1_3: return "thm1_3";
    case CaseId::lem3_2: return "lem3_2";
    case CaseId::lem3_5: return "lem3_5";
    case CaseId::eq1_1a: return "eq1_1a";
    case CaseId::eq1_21: return "eq1_21";
    case CaseId::eq1_0: return "eq1_0";
    case CaseId::eq2_m3: return "eq2_m3";
    case CaseId::eq2_m2: return "eq2_m2";
    case CaseId::eq2_m4: return "eq2_m4";
    case CaseId::eq2_0a: return "eq2_0a";
    case CaseId::eq2_0b: return "eq2_0b";
    case CaseId::eq2_3: return "eq2_3";
    case CaseId::gn_classic: return "gn_classic";
  }
  return "?";
}

inline CaseId case_id_from(std::string_view s) {
  for (auto c : kAllCases)
    if (to_string(c) == s) return c;
  throw Error(ErrorCode::unknown_case, "unknown case id '" + std::string(s) + "'");
}

/// Smoothness indices and reciprocal integrability exponents. Unset fields are
/// either irrelevant to the case or still to be derived.
struct ExponentSet {
  std::optional<Rational> alpha0, alpha1, alpha2, sigma, s, theta;
  std::optional<Rational> ip0, ip1, ip2, ir, iq;

  bool operator==(const ExponentSet&) const = default;

  /// Named access for serialization; p-type names report the exponent, not its reciprocal.
  std::map<std::string, std::string> to_map() const {
    std::map<std::string, std::string> m;
    auto put = [&](const char* k, const std::optional<Rational>& v) {
      if (v) m[k] = to_string(*v);
    };
    auto put_p = [&](const char* k, const std::optional<Rational>& v) {
      if (v) m[k] = reciprocal_to_string(*v);
    };
    put("alpha0", alpha0);
    put("alpha1", alpha1);
    put("alpha2", alpha2);
    put("sigma", sigma);
    put("s", s);
    put("theta", theta);
    put_p("p0", ip0);
    put_p("p1", ip1);
    put_p("p2", ip2);
    put_p("r", ir);
    put_p("q", iq);
    return m;
  }

  /// Set one field from "name=value" style input.
  void set(std::string_view name, std::string_view value) {
    if (name == "alpha0") alpha0 = parse_rational(value);
    else if (name == "alpha1") alpha1 = parse_rational(value);
    else if (name == "alpha2") alpha2 = parse_rational(value);
    else if (name == "sigma") sigma = parse_rational(value);
    else if (name == "s") s = parse_rational(value);
    else if (name == "theta") theta = parse_rational(value);
    else if (name == "p0") ip0 = parse_reciprocal(value);
    else if (name == "p1") ip1 = parse_reciprocal(value);
    else if (name == "p2") ip2 = parse_reciprocal(value);
    else if (name == "r") ir = parse_reciprocal(value);
    else if (name == "q") iq = parse_reciprocal(value);
    else throw Error(ErrorCode::invalid_argument, "unknown exponent '" + std::string(name) + "'");
  }
};

/// One factor of an inequality: a norm at exact exponents, raised to a power.
/// kind sobolev covers L^p (s = 0), ||D^k f||_p (integer s) and Hoelder (1/p = 0).
struct FactorRecipe {
  NormKind kind = NormKind::sobolev;
  Rational s{0};
  Rational ip{0};
  Rational power{1};
  int moment_order = 0;

  NormSpec spec() const {
    NormSpec n;
    n.kind = kind;
    n.s = to_double(s);
    n.p = reciprocal_to_p(ip);
    n.q = kInf;
    n.moment_order = moment_order;
    if (kind == NormKind::sobolev && s == kZero) n.kind = NormKind::lp;
    if (kind == NormKind::sobolev && ip == kZero && s.denominator() != 1) n.kind = NormKind::holder;
    return n;
  }
};

struct CaseRecipe {
  FactorRecipe lhs;
  std::vector<FactorRecipe> rhs;
};

namespace detail {

inline const Rational& need(const std::optional<Rational>& v, const char* name, CaseId id) {
  if (!v) throw Error(ErrorCode::missing_exponent, std::string(to_string(id)) + " needs " + name);
  return *v;
}

inline void condition(bool ok, CaseId id, const std::string& which) {
  if (!ok) throw Error(ErrorCode::condition_violated, std::string(to_string(id)) + ": " + which);
}

inline void check_reciprocal(const std::optional<Rational>& ip, const char* name, CaseId id) {
  if (ip) condition(*ip >= kZero && *ip <= kOne, id, std::string(name) + " must lie in [1, inf]");
}

/// Complete target = c_a * a + c_b * b (all reciprocals) given any two of the three.
inline void solve_linear(std::optional<Rational>& target, Rational ca, std::optional<Rational>& a, Rational cb,
                         std::optional<Rational>& b, CaseId id, const char* names) {
  const int missing = !target + !a + !b;
  if (missing > 1) throw Error(ErrorCode::missing_exponent, std::string(to_string(id)) + " needs two of " + names);
  if (missing == 0) {
    if (*target != ca * *a + cb * *b)
      throw Error(ErrorCode::exponent_mismatch, std::string(to_string(id)) + ": given " + names + " violate the relation");
    return;
  }
  if (!target) {
    target = ca * *a + cb * *b;
  } else if (!a) {
    if (ca == kZero) throw Error(ErrorCode::missing_exponent, std::string(to_string(id)) + " cannot solve for it");
    a = (*target - cb * *b) / ca;
  } else {
    if (cb == kZero) throw Error(ErrorCode::missing_exponent, std::string(to_string(id)) + " cannot solve for it");
    b = (*target - ca * *a) / cb;
  }
}

/// target = c * a, given either side.
inline void solve_proportional(std::optional<Rational>& target, Rational c, std::optional<Rational>& a, CaseId id,
                               const char* names) {
  if (!target && !a) throw Error(ErrorCode::missing_exponent, std::string(to_string(id)) + " needs one of " + names);
  if (target && a) {
    if (*target != c * *a)
      throw Error(ErrorCode::exponent_mismatch, std::string(to_string(id)) + ": given " + names + " violate the relation");
  } else if (!target) {
    target = c * *a;
  } else {
    if (c == kZero) throw Error(ErrorCode::missing_exponent, std::string(to_string(id)) + " cannot solve for it");
    a = *target / c;
  }
}

inline FactorRecipe W(Rational s, Rational ip, Rational pw = 1) { return {NormKind::sobolev, s, ip, pw, 0}; }
inline FactorRecipe B(Rational s, Rational pw = 1) { return {NormKind::besov, s, 0, pw, 0}; }
inline FactorRecipe P(Rational s, int k, Rational pw = 1) { return {NormKind::besov_sup_mollifier, s, 0, pw, k}; }

}  // namespace detail

/// Norm recipes for a completed exponent set.
inline CaseRecipe case_recipe(CaseId id, const ExponentSet& e) {
  using detail::B;
  using detail::P;
  using detail::W;
  const Rational one(1), zero(0);
  auto v = [&](const std::optional<Rational>& x) { return x.value_or(zero); };
  const Rational a0 = v(e.alpha0), a1 = v(e.alpha1), a2 = v(e.alpha2), sg = v(e.sigma), s = v(e.s), th = v(e.theta);
  const Rational ip0 = v(e.ip0), ip1 = v(e.ip1), ip2 = v(e.ip2), ir = v(e.ir), iq = v(e.iq);
  switch (id) {
    case CaseId::thm1_2: return {W(a1, ip1), {B(-sg, (a2 - a1) / (a2 + sg)), W(a2, ip2, (a1 + sg) / (a2 + sg))}};
    case CaseId::thm1_3: return {W(a1, ip1), {B(zero, (a2 - a1) / a2), W(a2, ip2, a1 / a2)}};
    case CaseId::lem3_2: return {W(a1, ip1), {W(zero, ir, one - a1 / a2), W(a2, ip2, a1 / a2)}};
    case CaseId::lem3_5: return {W(a1, ip1), {W(a0, ip0, th), W(a2, ip2, one - th)}};
    case CaseId::eq1_1a: return {W(zero, ip1), {B(-s, one / (s + one)), W(one, ip2, s / (s + one))}};
    case CaseId::eq1_21: return {W(a1, ip1), {W(zero, ir, one - a1), W(one, ip2, a1)}};
    case CaseId::eq1_0: return {W(a1, zero), {B(-sg, (a2 - a1) / (a2 + sg)), W(a2, zero, (a1 + sg) / (a2 + sg))}};
    case CaseId::eq2_m3: return {W(zero, zero), {B(-sg, a2 / (a2 + sg)), B(a2, sg / (a2 + sg))}};
    case CaseId::eq2_m2: return {B(a1), {B(zero, (a2 - a1) / a2), B(a2, a1 / a2)}};
    case CaseId::eq2_m4: return {B(a1), {B(-sg, (one - a1) / (one + sg)), W(one, zero, (a1 + sg) / (one + sg))}};
    case CaseId::eq2_0a:
    case CaseId::eq2_0b: {
      const int k = static_cast<int>(a2.numerator() / a2.denominator()) + 1;
      return {P(a1, k), {P(zero, k, one - a1 / a2), W(a2, zero, a1 / a2)}};
    }
    case CaseId::eq2_3: return {W(a1, ip1), {B(zero, one - a1), W(one, ip2, a1)}};
    case CaseId::gn_classic: return {W(a1, ip1), {W(zero, iq, one - a1 / a2), W(a2, ip2, a1 / a2)}};
  }
  throw Error(ErrorCode::unknown_case, "no recipe");
}

/// Scaling balance: powers sum to 1 and both smoothness and 1/p balance
/// separately, so the two sides carry the same dilation exponent in every dimension.
inline void check_balance(CaseId id, const CaseRecipe& r) {
  Rational pw(0), sm(0), ip(0);
  for (const auto& f : r.rhs) {
    pw += f.power;
    sm += f.power * f.s;
    ip += f.power * f.ip;
  }
  const std::string name(to_string(id));
  require(pw == kOne, ErrorCode::exponent_mismatch, name + ": powers sum to " + to_string(pw));
  require(sm == r.lhs.s, ErrorCode::exponent_mismatch, name + ": smoothness " + to_string(sm) + " vs " + to_string(r.lhs.s));
  require(ip == r.lhs.ip, ErrorCode::exponent_mismatch, name + ": 1/p " + to_string(ip) + " vs " + to_string(r.lhs.ip));
}

/// Complete the exponent set for a case and validate its side conditions.
inline ExponentSet derive_exponents(CaseId id, ExponentSet e) {
  using detail::check_reciprocal;
  using detail::condition;
  using detail::need;
  const Rational one(1), zero(0);
  switch (id) {
    case CaseId::thm1_2: {
      const auto a1 = need(e.alpha1, "alpha1", id), a2 = need(e.alpha2, "alpha2", id), sg = need(e.sigma, "sigma", id);
      condition(sg > kZero, id, "sigma > 0");
      condition(a1 >= kZero && a1 < a2, id, "0 <= alpha1 < alpha2");
      detail::solve_proportional(e.ip1, (a1 + sg) / (a2 + sg), e.ip2, id, "p1, p2");
      check_reciprocal(e.ip1, "p1", id);
      check_reciprocal(e.ip2, "p2", id);
      condition(a2 + sg > *e.ip2, id, "p2 (alpha2 + sigma) > 1");
      break;
    }
    case CaseId::thm1_3: {
      const auto a1 = need(e.alpha1, "alpha1", id), a2 = need(e.alpha2, "alpha2", id);
      condition(a1 > kZero && a1 < a2, id, "0 < alpha1 < alpha2");
      detail::solve_proportional(e.ip1, a1 / a2, e.ip2, id, "p1, p2");
      check_reciprocal(e.ip1, "p1", id);
      check_reciprocal(e.ip2, "p2", id);
      condition(a2 > *e.ip2, id, "alpha2 p2 > 1");
      break;
    }
    case CaseId::lem3_2: {
      const auto a1 = need(e.alpha1, "alpha1", id), a2 = need(e.alpha2, "alpha2", id);
      condition(a1 > kZero && a1 < a2 && a2 < kOne, id, "0 < alpha1 < alpha2 < 1");
      detail::solve_linear(e.ip1, one - a1 / a2, e.ir, a1 / a2, e.ip2, id, "p1, r, p2");
      condition(*e.ir < kOne && *e.ir >= kZero, id, "r > 1");
      condition(*e.ip1 > kZero && *e.ip1 <= kOne, id, "1 <= p1 < inf");
      condition(*e.ip2 > kZero && *e.ip2 <= kOne, id, "1 <= p2 < inf");
      break;
    }
    case CaseId::lem3_5: {
      const auto a0 = need(e.alpha0, "alpha0", id), a2 = need(e.alpha2, "alpha2", id);
      condition(a2 > a0, id, "alpha0 < alpha2");
      if (e.alpha1 && e.theta) {
        if (*e.theta != (a2 - *e.alpha1) / (a2 - a0))
          throw Error(ErrorCode::exponent_mismatch, "lem3_5: theta inconsistent with alphas");
      } else if (e.alpha1) {
        e.theta = (a2 - *e.alpha1) / (a2 - a0);
      } else if (e.theta) {
        e.alpha1 = a2 - *e.theta * (a2 - a0);
      } else {
        throw Error(ErrorCode::missing_exponent, "lem3_5 needs alpha1 or theta");
      }
      const Rational a1 = *e.alpha1, th = *e.theta;
      condition(a0 > kZero && a0 < a1 && a1 < a2 && a2 <= kOne, id, "0 < alpha0 < alpha1 < alpha2 <= 1");
      detail::solve_linear(e.ip1, th, e.ip0, one - th, e.ip2, id, "p0, p1, p2");
      check_reciprocal(e.ip0, "p0", id);
      check_reciprocal(e.ip1, "p1", id);
      check_reciprocal(e.ip2, "p2", id);
      condition(a0 - *e.ip0 < a2 - *e.ip2, id, "alpha0 - 1/p0 < alpha2 - 1/p2");
      break;
    }
    case CaseId::eq1_1a: {
      const auto s = need(e.s, "s", id);
      condition(s > kZero, id, "s > 0");
      detail::solve_proportional(e.ip1, s / (s + one), e.ip2, id, "p1, p2");
      check_reciprocal(e.ip1, "p1", id);
      check_reciprocal(e.ip2, "p2", id);
      break;
    }
    case CaseId::eq1_21: {
      const auto a1 = need(e.alpha1, "alpha1", id);
      condition(a1 > kZero && a1 < kOne, id, "0 < alpha1 < 1");
      detail::solve_linear(e.ip1, one - a1, e.ir, a1, e.ip2, id, "p1, r, p2");
      condition(*e.ir > kZero && *e.ir < kOne, id, "1 < r < inf");
      check_reciprocal(e.ip1, "p1", id);
      check_reciprocal(e.ip2, "p2", id);
      break;
    }
    case CaseId::eq1_0: {
      const auto a1 = need(e.alpha1, "alpha1", id), a2 = need(e.alpha2, "alpha2", id), sg = need(e.sigma, "sigma", id);
      condition(a1 > kZero && a1 < a2 && a2 < kOne, id, "0 < alpha1 < alpha2 < 1");
      condition(sg > kZero, id, "sigma > 0");
      e.ip1 = e.ip2 = zero;
      break;
    }
    case CaseId::eq2_m3: {
      const auto a2 = need(e.alpha2, "alpha2", id), sg = need(e.sigma, "sigma", id);
      condition(a2 > kZero && a2 < kOne, id, "0 < alpha2 < 1");
      condition(sg > kZero, id, "sigma > 0");
      condition(!e.alpha1 || *e.alpha1 == kZero, id, "alpha1 = 0");
      e.alpha1 = zero;
      e.ip1 = e.ip2 = zero;
      break;
    }
    case CaseId::eq2_m2: {
      const auto a1 = need(e.alpha1, "alpha1", id), a2 = need(e.alpha2, "alpha2", id);
      condition(a1 > kZero && a1 < a2 && a2 < kOne, id, "0 < alpha1 < alpha2 < 1");
      condition(!e.sigma || *e.sigma == kZero, id, "sigma = 0");
      e.sigma = zero;
      e.ip1 = e.ip2 = zero;
      break;
    }
    case CaseId::eq2_m4: {
      const auto a1 = need(e.alpha1, "alpha1", id), sg = need(e.sigma, "sigma", id);
      condition(a1 > kZero && a1 < kOne, id, "0 < alpha1 < 1");
      condition(sg > kZero, id, "sigma > 0");
      condition(!e.alpha2 || *e.alpha2 == kOne, id, "alpha2 = 1");
      e.alpha2 = one;
      e.ip1 = e.ip2 = zero;
      break;
    }
    case CaseId::eq2_0a:
    case CaseId::eq2_0b: {
      const auto a1 = need(e.alpha1, "alpha1", id), a2 = need(e.alpha2, "alpha2", id);
      condition(a1 > kZero && a1 < kOne && a2 >= kOne, id, "0 < alpha1 < 1 <= alpha2");
      const bool integer = a2.denominator() == kOne;
      if (id == CaseId::eq2_0a) condition(integer, id, "alpha2 integer");
      else condition(!integer, id, "alpha2 not an integer");
      e.ip1 = e.ip2 = zero;
      break;
    }
    case CaseId::eq2_3: {
      const auto a1 = need(e.alpha1, "alpha1", id);
      condition(a1 > kZero && a1 < kOne, id, "0 < alpha1 < 1");
      condition(!e.alpha2 || *e.alpha2 == kOne, id, "alpha2 = 1");
      e.alpha2 = one;
      detail::solve_proportional(e.ip1, a1, e.ip2, id, "p1, p2");
      check_reciprocal(e.ip1, "p1", id);
      check_reciprocal(e.ip2, "p2", id);
      condition(*e.ip2 < kOne, id, "alpha2 p2 > 1");
      break;
    }
    case CaseId::gn_classic: {
      const auto a1 = need(e.alpha1, "alpha1", id), a2 = need(e.alpha2, "alpha2", id);
      condition(a1 >= kZero && a1 < a2, id, "0 <= alpha1 < alpha2");
      detail::solve_linear(e.ip1, one - a1 / a2, e.iq, a1 / a2, e.ip2, id, "p1, q, p2");
      check_reciprocal(e.ip1, "p1", id);
      check_reciprocal(e.ip2, "p2", id);
      check_reciprocal(e.iq, "q", id);
      break;
    }
  }
  check_balance(id, case_recipe(id, e));
  return e;
}

/// The reference exponent set of each case (before completion).
inline ExponentSet reference_exponents(CaseId id) {
  ExponentSet e;
  auto r = [](long long a, long long b = 1) { return Rational(a, b); };
  auto ip = [](long long a, long long b = 1) { return Rational(b, a); };  // 1/p for p = a/b
  switch (id) {
    case CaseId::thm1_2: e.alpha1 = r(1, 4); e.alpha2 = r(3, 4); e.sigma = r(1); e.ip2 = ip(2); break;
    case CaseId::thm1_3: e.alpha1 = r(1, 2); e.alpha2 = r(1); e.ip2 = ip(2); break;
    case CaseId::lem3_2: e.alpha1 = r(1, 4); e.alpha2 = r(3, 4); e.ir = ip(4); e.ip2 = ip(2); break;
    case CaseId::lem3_5: e.alpha0 = r(1, 5); e.alpha1 = r(1, 2); e.alpha2 = r(1); e.ip0 = ip(2); e.ip2 = ip(2); break;
    case CaseId::eq1_1a: e.s = r(1); e.ip2 = ip(2); break;
    case CaseId::eq1_21: e.alpha1 = r(1, 2); e.ir = ip(3); e.ip2 = ip(2); break;
    case CaseId::eq1_0: e.alpha1 = r(3, 10); e.alpha2 = r(7, 10); e.sigma = r(1, 2); break;
    case CaseId::eq2_m3: e.alpha2 = r(1, 2); e.sigma = r(1, 2); break;
    case CaseId::eq2_m2: e.alpha1 = r(3, 10); e.alpha2 = r(3, 5); break;
    case CaseId::eq2_m4: e.alpha1 = r(1, 2); e.sigma = r(1, 2); break;
    case CaseId::eq2_0a: e.alpha1 = r(1, 2); e.alpha2 = r(2); break;
    case CaseId::eq2_0b: e.alpha1 = r(1, 2); e.alpha2 = r(3, 2); break;
    case CaseId::eq2_3: e.alpha1 = r(2, 5); e.ip2 = ip(2); break;
    case CaseId::gn_classic: e.alpha1 = r(1, 2); e.alpha2 = r(1); e.ip2 = ip(2); e.iq = ip(4); break;
  }
  return e;
}

/// The interpolation condition alpha - 1/p < alpha2 - 1/p2 that decides
/// whether ||f||_{W^{a1,p1}} <~ ||f||_{W^{a,p}}^theta ||f||_{W^{a2,p2}}^{1-theta} can hold.
inline bool interpolation_condition(const Rational& a, const Rational& ip, const Rational& a2, const Rational& ip2) {
  return a - ip < a2 - ip2;
}

}  // namespace fracgn
