#include "kauffman/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "kauffman/errors.hpp"

namespace kauffman {

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(long long c) {
  if (c != 0) terms_.push_back({Monomial{}, BigInt(c)});
}

LaurentPoly LaurentPoly::monomial(Monomial m, BigInt c) {
  LaurentPoly p;
  if (c != 0) p.terms_.push_back({m, std::move(c)});
  return p;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

template <bool Subtract>
std::vector<LaurentPoly::Term> merge_terms(const std::vector<LaurentPoly::Term>& x,
                                           const std::vector<LaurentPoly::Term>& y) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].mono < y[j].mono)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].mono < x[i].mono) {
      out.push_back({y[j].mono, Subtract ? BigInt(-y[j].coeff) : y[j].coeff});
      ++j;
    } else {
      BigInt c = Subtract ? BigInt(x[i].coeff - y[j].coeff) : BigInt(x[i].coeff + y[j].coeff);
      if (c != 0) out.push_back({x[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms<false>(terms_, o.terms_);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms<true>(terms_, o.terms_);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
  if (x.is_zero() || y.is_zero()) return {};
  if (x.size() > y.size()) return y * x;
  LaurentPoly r;
  if (x.size() == 1) {
    // translation by a monomial keeps the order
    const auto& [m, c] = x.terms_.front();
    r.terms_ = y.terms_;
    for (auto& t : r.terms_) {
      t.mono = t.mono * m;
      if (c != 1) t.coeff *= c;
    }
    return r;
  }
  // sort packed exponents (order preserving) and sum coefficients per key
  auto pack = [](const Monomial& m) {
    constexpr std::int64_t off = 1 << 20;
    return ((m.expa + off) << 42) | ((m.expA + off) << 21) | (m.expB + off);
  };
  std::vector<std::pair<std::int64_t, std::int32_t>> keys;
  keys.reserve(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      keys.emplace_back(pack(x.terms_[i].mono * y.terms_[j].mono), static_cast<std::int32_t>(i * y.size() + j));
  std::sort(keys.begin(), keys.end());
  for (std::size_t k = 0; k < keys.size();) {
    std::size_t e = k;
    BigInt c = 0;
    for (; e < keys.size() && keys[e].first == keys[k].first; ++e) {
      const auto i = static_cast<std::size_t>(keys[e].second) / y.size();
      const auto j = static_cast<std::size_t>(keys[e].second) % y.size();
      c += x.terms_[i].coeff * y.terms_[j].coeff;
    }
    if (c != 0) {
      const auto i = static_cast<std::size_t>(keys[k].second) / y.size();
      const auto j = static_cast<std::size_t>(keys[k].second) % y.size();
      r.terms_.push_back({x.terms_[i].mono * y.terms_[j].mono, std::move(c)});
    }
    k = e;
  }
  return r;
}

LaurentPoly LaurentPoly::times_monomial(Monomial m) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.mono = t.mono * m;
  return r;
}

bool operator==(const LaurentPoly& x, const LaurentPoly& y) {
  if (x.terms_.size() != y.terms_.size()) return false;
  for (std::size_t i = 0; i < x.terms_.size(); ++i) {
    if (x.terms_[i].mono != y.terms_[i].mono || x.terms_[i].coeff != y.terms_[i].coeff)
      return false;
  }
  return true;
}

bool LaurentPoly::divide_by_A_minus_B(LaurentPoly& quotient) const {
  if (is_zero()) {
    quotient = {};
    return true;
  }
  // Each piece homogeneous in (A, B) of degree t divides separately:
  // sum c_j A^j B^(t-j) = (A-B) sum d_j A^j B^(t-1-j) with d_j = -(c_jmin + ... + c_j).
  struct Key {
    int expa, deg, expA;
    const BigInt* c;
  };
  std::vector<Key> ks;
  ks.reserve(terms_.size());
  for (const auto& t : terms_) ks.push_back({t.mono.expa, t.mono.expA + t.mono.expB, t.mono.expA, &t.coeff});
  std::sort(ks.begin(), ks.end(), [](const Key& x, const Key& y) {
    return std::tie(x.expa, x.deg, x.expA) < std::tie(y.expa, y.deg, y.expA);
  });
  std::vector<Term> out;
  for (std::size_t i = 0; i < ks.size();) {
    std::size_t e = i;
    while (e < ks.size() && ks[e].expa == ks[i].expa && ks[e].deg == ks[i].deg) ++e;
    BigInt sum = 0;
    for (std::size_t k = i; k < e; ++k) sum += *ks[k].c;
    if (sum != 0) return false;
    BigInt d = 0;
    std::size_t k = i;
    for (int j = ks[i].expA; j < ks[e - 1].expA; ++j) {
      if (ks[k].expA == j) d -= *ks[k++].c;
      if (d != 0) out.push_back({Monomial{j, ks[i].deg - 1 - j, ks[i].expa}, d});
    }
    i = e;
  }
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return x.mono < y.mono; });
  quotient.terms_ = std::move(out);
  return true;
}

LaurentPoly LaurentPoly::mirrored() const {
  LaurentBuilder b;
  for (const auto& t : terms_) b.add(Monomial{t.mono.expB, t.mono.expA, -t.mono.expa}, t.coeff);
  return b.build();
}

namespace {

std::string factor_text(char var, int e) {
  std::string s(1, var);
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

std::string monomial_text(const Monomial& m) {
  std::string s;
  auto append = [&s](char v, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += factor_text(v, e);
  };
  append('a', m.expa);
  append('A', m.expA);
  append('B', m.expB);
  return s;
}

}  // namespace

std::string LaurentPoly::to_text() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const bool neg = it->coeff < 0;
    const BigInt mag = neg ? BigInt(-it->coeff) : it->coeff;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string mono = monomial_text(it->mono);
    if (mono.empty()) {
      s += mag.str();
    } else if (mag == 1) {
      s += mono;
    } else {
      s += mag.str() + "*" + mono;
    }
  }
  return s;
}

// -------------------------------------------------------------- LaurentBuilder

void LaurentBuilder::add(Monomial m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void LaurentBuilder::add(const LaurentPoly& p) {
  for (const auto& t : p.terms()) add(t.mono, t.coeff);
}

void LaurentBuilder::add_product(const LaurentPoly& x, const LaurentPoly& y) {
  for (const auto& s : x.terms())
    for (const auto& t : y.terms()) add(s.mono * t.mono, s.coeff * t.coeff);
}

LaurentPoly LaurentBuilder::build() {
  LaurentPoly p;
  p.terms_.reserve(acc_.size());
  for (auto& [m, c] : acc_)
    if (c != 0) p.terms_.push_back({m, std::move(c)});
  acc_.clear();
  return p;
}

// ------------------------------------------------------------------ RingElem

const LaurentPoly& A_minus_B_pow(int e) {
  static const std::vector<LaurentPoly> table = [] {
    std::vector<LaurentPoly> t{LaurentPoly(1)};
    const LaurentPoly base = LaurentPoly::var_A() - LaurentPoly::var_B();
    while (t.size() < 64) t.push_back(t.back() * base);
    return t;
  }();
  if (e < static_cast<int>(table.size())) return table[static_cast<std::size_t>(e)];
  static std::mutex mu;
  static std::map<int, LaurentPoly> more;
  std::lock_guard<std::mutex> lock(mu);
  auto it = more.find(e);
  if (it == more.end()) it = more.emplace(e, table.back() * A_minus_B_pow(e - 63)).first;
  return it->second;
}

namespace {

LaurentPoly times_AmB(const LaurentPoly& p, int e) { return e == 0 ? p : p * A_minus_B_pow(e); }

}  // namespace

RingElem RingElem::normalize(LaurentPoly num, int dpow) {
  RingElem r;
  if (num.is_zero()) return r;
  LaurentPoly q;
  while (dpow > 0 && num.divide_by_A_minus_B(q)) {
    num = std::move(q);
    --dpow;
  }
  r.num_ = std::move(num);
  r.dpow_ = dpow;
  return r;
}

RingElem RingElem::operator-() const {
  RingElem r = *this;
  r.num_ = -r.num_;
  return r;
}

RingElem operator+(const RingElem& x, const RingElem& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const int d = std::max(x.dpow_, y.dpow_);
  LaurentPoly n = times_AmB(x.num_, d - x.dpow_);
  n += times_AmB(y.num_, d - y.dpow_);
  return RingElem::normalize(std::move(n), d);
}

RingElem operator-(const RingElem& x, const RingElem& y) { return x + (-y); }

RingElem operator*(const RingElem& x, const RingElem& y) {
  if (x.is_zero() || y.is_zero()) return {};
  return RingElem::normalize(x.num_ * y.num_, x.dpow_ + y.dpow_);
}

RingElem RingElem::mirrored() const {
  // (A-B) -> (B-A) = -(A-B)
  LaurentPoly n = num_.mirrored();
  if (dpow_ % 2 != 0) n = -n;
  return normalize(std::move(n), dpow_);
}

std::string RingElem::to_text() const {
  if (dpow_ == 0) return num_.to_text();
  return "(" + num_.to_text() + ")/(A-B)^" + std::to_string(dpow_);
}

RingElem pow(const RingElem& x, int e) {
  RingElem r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// -------------------------------------------------------------------- parser

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view s) : s_(s) {}

  RingElem parse() {
    skip();
    LaurentPoly num;
    int dpow = 0;
    if (peek() == '(') {
      // Either "(poly)/(A-B)^d" or a parenthesised polynomial.
      ++pos_;
      num = sum();
      expect(')');
      skip();
      if (peek() == '/') {
        ++pos_;
        skip();
        for (char c : std::string_view("(A-B)^")) {
          skip();
          expect(c);
        }
        dpow = integer();
        if (dpow < 0) fail("negative denominator power");
      }
    } else {
      num = sum();
    }
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return RingElem::normalize(std::move(num), dpow);
  }

 private:
  LaurentPoly sum() {
    LaurentBuilder b;
    skip();
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    term(b, sign);
    for (;;) {
      skip();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      term(b, c == '+' ? 1 : -1);
    }
    return b.build();
  }

  void term(LaurentBuilder& b, int sign) {
    skip();
    BigInt coeff = 1;
    Monomial m;
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = big_integer();
      any = true;
      skip();
      if (peek() != '*') {
        b.add(m, sign * coeff);
        return;
      }
      ++pos_;
    }
    for (;;) {
      skip();
      const char v = peek();
      if (v != 'a' && v != 'A' && v != 'B') {
        if (!any) fail("expected a term");
        fail("expected a variable after '*'");
      }
      ++pos_;
      int e = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        e = integer();
      }
      if (v == 'a') m.expa += e;
      if (v == 'A') m.expA += e;
      if (v == 'B') m.expB += e;
      any = true;
      skip();
      if (peek() != '*') break;
      ++pos_;
    }
    b.add(m, sign * coeff);
  }

  int integer() {
    skip();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > (1 << 24)) fail("exponent too large");
    }
    return static_cast<int>(neg ? -v : v);
  }

  BigInt big_integer() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += s_[pos_++];
    return BigInt(digits);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at position " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RingElem parse_ring(std::string_view text) { return TermParser(text).parse(); }

// ----------------------------------------------------------- RingAccumulator

void RingAccumulator::raise_to(int d) {
  if (d <= dpow_) return;
  num_ = num_ * A_minus_B_pow(d - dpow_);
  dpow_ = d;
}

void RingAccumulator::add(const RingElem& x) {
  if (x.is_zero()) return;
  raise_to(x.dpow());
  num_ += times_AmB(x.num(), dpow_ - x.dpow());
}

void RingAccumulator::add_scaled(const LaurentPoly& scale, const RingElem& x) {
  if (x.is_zero() || scale.is_zero()) return;
  raise_to(x.dpow());
  num_ += times_AmB(scale * x.num(), dpow_ - x.dpow());
}

RingElem RingAccumulator::result() const { return RingElem::normalize(num_, dpow_); }

// ----------------------------------------------------------------- constants

const Constants& constants() {
  static const Constants c = [] {
    using L = LaurentPoly;
    const L A = L::var_A(), B = L::var_B(), a = L::var_a(), ainv = L::var_a(-1);
    const L AmB = A - B;
    Constants k;
    k.alpha = RingElem::normalize(a - ainv + AmB, 1);
    k.beta = RingElem::normalize(A * ainv - B * a - (A + B) * AmB, 1);
    k.gamma = RingElem::normalize(B * B * a - A * A * ainv + A * B * AmB, 1);
    k.delta = RingElem::normalize(B * B * B * a - A * A * A * ainv, 1);
    return k;
  }();
  return c;
}

// --------------------------------------------------------------------- QPoly

QPoly::QPoly(long long c) {
  if (c != 0) coeffs_[0] = c;
}

QPoly QPoly::q(int e) {
  QPoly p;
  p.coeffs_[e] = 1;
  return p;
}

void QPoly::add_term(int e, const BigInt& c) {
  if (c == 0) return;
  auto& slot = coeffs_[e];
  slot += c;
  if (slot == 0) coeffs_.erase(e);
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& [e, c] : r.coeffs_) c = -c;
  return r;
}

QPoly operator+(const QPoly& x, const QPoly& y) {
  QPoly r = x;
  for (const auto& [e, c] : y.coeffs_) r.add_term(e, c);
  return r;
}

QPoly operator-(const QPoly& x, const QPoly& y) { return x + (-y); }

QPoly operator*(const QPoly& x, const QPoly& y) {
  QPoly r;
  for (const auto& [e1, c1] : x.coeffs_)
    for (const auto& [e2, c2] : y.coeffs_) r.add_term(e1 + e2, c1 * c2);
  return r;
}

QPoly pow(const QPoly& x, int e) {
  QPoly r(1);
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

bool QPoly::divide_by_q_minus_qinv(int e, QPoly& quotient) const {
  // (q - q^{-1}) = q^{-1}(q^2 - 1): divide by (q^2 - 1) e times, then shift by q^e.
  std::map<int, BigInt> cur = coeffs_;
  for (int round = 0; round < e; ++round) {
    if (cur.empty()) break;
    // Long division by (q^2 - 1), top-down.
    const int lowest = cur.begin()->first;
    std::map<int, BigInt> quo;
    std::map<int, BigInt> rem = std::move(cur);
    while (!rem.empty()) {
      auto top = std::prev(rem.end());
      const int k = top->first;
      if (k < lowest + 2) return false;
      const BigInt c = top->second;
      quo[k - 2] = c;
      rem.erase(top);
      auto& low = rem[k - 2];
      low += c;
      if (low == 0) rem.erase(k - 2);
    }
    cur = std::move(quo);
  }
  quotient = {};
  for (const auto& [k, c] : cur) quotient.add_term(k + e, c);
  return true;
}

std::string QPoly::to_text() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const bool neg = it->second < 0;
    const BigInt mag = neg ? BigInt(-it->second) : it->second;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (it->first == 0) {
      s += mag.str();
      continue;
    }
    if (mag != 1) s += mag.str() + "*";
    s += "q";
    if (it->first != 1) s += "^" + std::to_string(it->first);
  }
  return s;
}

QPoly specialize_soN(const RingElem& x, int N) {
  if (N < 2) throw Error(ErrorKind::Range, "SO(N) specialization needs N >= 2");
  QPoly num;
  for (const auto& t : x.num().terms())
    num.add_term(t.mono.expa * (N - 1) + t.mono.expA - t.mono.expB, t.coeff);
  QPoly out;
  if (!num.divide_by_q_minus_qinv(x.dpow(), out))
    throw Error(ErrorKind::DivisionFailure,
                "(q - q^-1)^" + std::to_string(x.dpow()) + " does not divide the numerator");
  return out;
}

}  // namespace kauffman
