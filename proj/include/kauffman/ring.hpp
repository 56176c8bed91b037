#pragma once

// Exact arithmetic in Z[A^{+-1}, B^{+-1}, a^{+-1}, (A-B)^{-1}].
//
// An element is stored as num / (A-B)^dpow with num a Laurent polynomial in
// (A, B, a). The canonical form has dpow == 0 or (A-B) not dividing num, so
// equality of elements is equality of their stored fields.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kauffman {

using BigInt = boost::multiprecision::cpp_int;

struct Monomial {
  int expA = 0;
  int expB = 0;
  int expa = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// Canonical order: (expa, expA, expB) lexicographic.
  friend std::strong_ordering operator<=>(const Monomial& x, const Monomial& y) {
    if (auto c = x.expa <=> y.expa; c != 0) return c;
    if (auto c = x.expA <=> y.expA; c != 0) return c;
    return x.expB <=> y.expB;
  }

  Monomial operator*(const Monomial& o) const {
    return {expA + o.expA, expB + o.expB, expa + o.expa};
  }
};

class LaurentPoly {
 public:
  struct Term {
    Monomial mono;
    BigInt coeff;
  };

  LaurentPoly() = default;
  LaurentPoly(long long c);  // NOLINT: constants convert implicitly
  static LaurentPoly monomial(Monomial m, BigInt c = 1);
  static LaurentPoly var_A(int e = 1) { return monomial({e, 0, 0}); }
  static LaurentPoly var_B(int e = 1) { return monomial({0, e, 0}); }
  static LaurentPoly var_a(int e = 1) { return monomial({0, 0, e}); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Terms in ascending canonical order.
  const std::vector<Term>& terms() const { return terms_; }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
  friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }
  friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);
  LaurentPoly times_monomial(Monomial m) const;

  friend bool operator==(const LaurentPoly& x, const LaurentPoly& y);

  /// Exact division by (A - B); returns false (and leaves `quotient`
  /// unspecified) when (A - B) does not divide this polynomial.
  bool divide_by_A_minus_B(LaurentPoly& quotient) const;

  /// Substitution A <-> B, a -> a^{-1}.
  LaurentPoly mirrored() const;

  std::string to_text() const;

 private:
  friend class LaurentBuilder;
  std::vector<Term> terms_;  // ascending, no zero coefficients
};

/// Collects terms in arbitrary order and produces a canonical LaurentPoly.
class LaurentBuilder {
 public:
  void add(Monomial m, const BigInt& c);
  void add(const LaurentPoly& p);
  void add_product(const LaurentPoly& x, const LaurentPoly& y);
  LaurentPoly build();

 private:
  std::map<Monomial, BigInt> acc_;
};

class RingElem {
 public:
  RingElem() = default;
  RingElem(long long c) : num_(c) {}  // NOLINT
  RingElem(LaurentPoly num) : num_(std::move(num)) {}  // NOLINT

  /// Canonical form of num / (A-B)^dpow.
  static RingElem normalize(LaurentPoly num, int dpow);

  const LaurentPoly& num() const { return num_; }
  int dpow() const { return dpow_; }
  bool is_zero() const { return num_.is_zero(); }

  RingElem operator-() const;
  friend RingElem operator+(const RingElem& x, const RingElem& y);
  friend RingElem operator-(const RingElem& x, const RingElem& y);
  friend RingElem operator*(const RingElem& x, const RingElem& y);
  RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
  RingElem& operator-=(const RingElem& o) { return *this = *this - o; }
  RingElem& operator*=(const RingElem& o) { return *this = *this * o; }
  friend bool operator==(const RingElem&, const RingElem&) = default;

  /// Monomial powers including negative ones.
  static RingElem A(int e = 1) { return LaurentPoly::var_A(e); }
  static RingElem B(int e = 1) { return LaurentPoly::var_B(e); }
  static RingElem a(int e = 1) { return LaurentPoly::var_a(e); }
  /// (A - B)^{-e}.
  static RingElem inv_A_minus_B(int e = 1) { return normalize(LaurentPoly(1), e); }

  /// Image under A <-> B, a -> a^{-1}.
  RingElem mirrored() const;

  /// "c*a^i*A^j*B^k + ..." with optional "/(A-B)^d".
  std::string to_text() const;

 private:
  LaurentPoly num_;
  int dpow_ = 0;
};

RingElem pow(const RingElem& x, int e);

/// Parses the text form produced by RingElem::to_text (and any sum of such
/// terms with single spaces or none around '+'/'-').
RingElem parse_ring(std::string_view text);

/// Sums many elements with one normalization at the end.
class RingAccumulator {
 public:
  void add(const RingElem& x);
  void add_scaled(const LaurentPoly& scale, const RingElem& x);
  RingElem result() const;

 private:
  void raise_to(int d);
  LaurentPoly num_;
  int dpow_ = 0;
};

struct Constants {
  RingElem alpha;
  RingElem beta;
  RingElem gamma;
  RingElem delta;
};

/// alpha, beta, gamma, delta of the graph skein relations.
const Constants& constants();

/// (A - B)^e as a polynomial.
const LaurentPoly& A_minus_B_pow(int e);

/// Laurent polynomial in one variable q.
class QPoly {
 public:
  QPoly() = default;
  QPoly(long long c);  // NOLINT
  static QPoly q(int e = 1);

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<int, BigInt>& coeffs() const { return coeffs_; }
  void add_term(int e, const BigInt& c);

  QPoly operator-() const;
  friend QPoly operator+(const QPoly& x, const QPoly& y);
  friend QPoly operator-(const QPoly& x, const QPoly& y);
  friend QPoly operator*(const QPoly& x, const QPoly& y);
  friend bool operator==(const QPoly&, const QPoly&) = default;

  /// Exact division by (q - q^{-1})^e; false if not divisible.
  bool divide_by_q_minus_qinv(int e, QPoly& quotient) const;

  /// Terms by descending exponent: "-q - q^-1".
  std::string to_text() const;

 private:
  std::map<int, BigInt> coeffs_;  // no zero entries
};

QPoly pow(const QPoly& x, int e);

/// Substitutes A = q, B = q^{-1}, a = q^{N-1} and divides out the
/// denominator. Throws DivisionFailure if the result is not a Laurent
/// polynomial in q.
QPoly specialize_soN(const RingElem& x, int N);

}  // namespace kauffman
