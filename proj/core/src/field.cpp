#include "cbcpir/field.hpp"

#include <algorithm>
#include <array>
#include <cassert>

#include "cbcpir/matrix.hpp"

namespace cbcpir {
namespace {

constexpr unsigned kMaxExtDegree = 64;

Word mulmod_u64(Word a, Word b, Word m) {
  return static_cast<Word>((static_cast<unsigned __int128>(a) * b) % m);
}

Word powmod_u64(Word a, Word e, Word m) {
  Word r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(Word n) {
  if (n < 2) return false;
  for (Word p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  Word d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Deterministic witness set for all 64-bit inputs.
  for (Word a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                 29ull, 31ull, 37ull}) {
    Word x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---- GF(2) polynomial helpers on uint64 bit masks (degree <= 63) ----

int gf2_degree(Word p) { return p == 0 ? -1 : 63 - __builtin_clzll(p); }

Word gf2_mulmod(Word a, Word b, Word f) {
  const int df = gf2_degree(f);
  Word r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (gf2_degree(a) == df) a ^= f;
  }
  return r;
}

Word gf2_gcd(Word a, Word b) {
  while (b) {
    int da = gf2_degree(a), db = gf2_degree(b);
    if (da < db) {
      std::swap(a, b);
      std::swap(da, db);
    }
    if (b == 0) break;
    while (da >= db && a) {
      a ^= b << (da - db);
      da = gf2_degree(a);
    }
    std::swap(a, b);
  }
  return a;
}

bool gf2_irreducible(Word f) {
  const int n = gf2_degree(f);
  // x^(2^i) mod f by repeated squaring of u, checking the standard criteria.
  Word u = 2;  // the polynomial x
  std::vector<int> prime_divs;
  for (int d = 2, m = n; d <= m; ++d) {
    if (m % d == 0) {
      prime_divs.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  for (int i = 1; i <= n; ++i) {
    u = gf2_mulmod(u, u, f);
    for (int d : prime_divs) {
      if (i == n / d && gf2_gcd(u ^ 2ull, f) != 1) return false;
    }
  }
  return u == 2;
}

Word smallest_gf2_poly(unsigned bits) {
  const Word lead = Word{1} << bits;
  for (Word c = 1;; c += 2) {  // constant term must be 1
    Word f = lead | c;
    if (gf2_irreducible(f)) return f;
  }
}

// ---- dense polynomial helpers over an arbitrary base field ----

using Poly = std::vector<Word>;  // coefficients, low order first

int poly_degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

void poly_trim(Poly& p) { p.resize(static_cast<std::size_t>(poly_degree(p) + 1)); }

// Product of a and b reduced modulo the monic polynomial x^s + f_low.
Poly poly_mulmod(const BaseField& F, const Poly& a, const Poly& b,
                 const Poly& f_low, unsigned s) {
  Poly prod(2 * s - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
    }
  }
  for (std::size_t d = 2 * s - 2; d + 1 > s; --d) {
    const Word c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (unsigned j = 0; j < s; ++j) {
      prod[d - s + j] = F.sub(prod[d - s + j], F.mul(c, f_low[j]));
    }
  }
  prod.resize(s);
  return prod;
}

Poly poly_pow_q(const BaseField& F, Poly base, Word q, const Poly& f_low,
                unsigned s) {
  Poly result{1};
  result.resize(s, 0);
  while (q) {
    if (q & 1) result = poly_mulmod(F, result, base, f_low, s);
    base = poly_mulmod(F, base, base, f_low, s);
    q >>= 1;
  }
  return result;
}

Poly poly_mod(const BaseField& F, Poly a, const Poly& b) {
  poly_trim(a);
  const int db = poly_degree(b);
  assert(db >= 0);
  const Word lead_inv = F.inv(b[static_cast<std::size_t>(db)]);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) {
    const Word c = F.mul(a[static_cast<std::size_t>(da)], lead_inv);
    for (int j = 0; j <= db; ++j) {
      auto idx = static_cast<std::size_t>(da - db + j);
      a[idx] = F.sub(a[idx], F.mul(c, b[static_cast<std::size_t>(j)]));
    }
    poly_trim(a);
    if (a.empty()) break;
  }
  return a;
}

bool poly_is_one_gcd(const BaseField& F, Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_degree(a) == 0;
}

bool poly_irreducible(const BaseField& F, const Poly& f_low, unsigned s) {
  std::vector<unsigned> prime_divs;
  for (unsigned d = 2, m = s; d <= m; ++d) {
    if (m % d == 0) {
      prime_divs.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  Poly full = f_low;
  full.push_back(1);  // monic closure for gcd checks
  Poly u{0, 1};       // x
  u.resize(s, 0);
  for (unsigned i = 1; i <= s; ++i) {
    u = poly_pow_q(F, u, F.size(), f_low, s);
    for (unsigned d : prime_divs) {
      if (i != s / d) continue;
      Poly diff = u;
      if (diff.size() < 2) diff.resize(2, 0);
      diff[1] = F.sub(diff[1], 1);
      poly_trim(diff);
      if (diff.empty()) return false;  // x^{q^{s/d}} == x: proper subfield
      if (!poly_is_one_gcd(F, full, diff)) return false;
    }
  }
  Poly diff = u;
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = F.sub(diff[1], 1);
  return poly_degree(diff) < 0;
}

// ---- small dense linear algebra over the base field (basis handling) ----

bool try_invert_square(const BaseField& F, std::vector<Word> m, unsigned n,
                       std::vector<Word>& inv_out) {
  std::vector<Word> inv(static_cast<std::size_t>(n) * n, 0);
  for (unsigned i = 0; i < n; ++i) inv[static_cast<std::size_t>(i) * n + i] = 1;
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && m[static_cast<std::size_t>(piv) * n + col] == 0) ++piv;
    if (piv == n) return false;
    if (piv != col) {
      for (unsigned j = 0; j < n; ++j) {
        std::swap(m[static_cast<std::size_t>(piv) * n + j],
                  m[static_cast<std::size_t>(col) * n + j]);
        std::swap(inv[static_cast<std::size_t>(piv) * n + j],
                  inv[static_cast<std::size_t>(col) * n + j]);
      }
    }
    const Word f = F.inv(m[static_cast<std::size_t>(col) * n + col]);
    for (unsigned j = 0; j < n; ++j) {
      m[static_cast<std::size_t>(col) * n + j] =
          F.mul(m[static_cast<std::size_t>(col) * n + j], f);
      inv[static_cast<std::size_t>(col) * n + j] =
          F.mul(inv[static_cast<std::size_t>(col) * n + j], f);
    }
    for (unsigned r = 0; r < n; ++r) {
      if (r == col) continue;
      const Word c = m[static_cast<std::size_t>(r) * n + col];
      if (c == 0) continue;
      for (unsigned j = 0; j < n; ++j) {
        m[static_cast<std::size_t>(r) * n + j] =
            F.sub(m[static_cast<std::size_t>(r) * n + j],
                  F.mul(c, m[static_cast<std::size_t>(col) * n + j]));
        inv[static_cast<std::size_t>(r) * n + j] =
            F.sub(inv[static_cast<std::size_t>(r) * n + j],
                  F.mul(c, inv[static_cast<std::size_t>(col) * n + j]));
      }
    }
  }
  inv_out = std::move(inv);
  return true;
}

void matvec(const BaseField& F, const std::vector<Word>& m, unsigned n,
            std::span<const Word> x, std::span<Word> out) {
  for (unsigned r = 0; r < n; ++r) {
    Word acc = 0;
    for (unsigned c = 0; c < n; ++c) {
      acc = F.add(acc, F.mul(m[static_cast<std::size_t>(r) * n + c], x[c]));
    }
    out[r] = acc;
  }
}

}  // namespace

BaseField BaseField::prime(Word p) {
  if (!is_prime_u64(p)) throw FieldError("prime backend requires a prime modulus");
  return BaseField(FieldKind::Prime, p, p, 0);
}

BaseField BaseField::binary(unsigned bits) {
  if (bits < 1 || bits > 32) throw FieldError("binary backend supports GF(2^b), 1 <= b <= 32");
  const Word poly = smallest_gf2_poly(bits);
  return BaseField(FieldKind::Binary, Word{1} << bits, poly, bits);
}

Word BaseField::mul(Word a, Word b) const {
  if (kind_ == FieldKind::Prime) return mulmod_u64(a, b, q_);
  return gf2_mulmod(a, b, mod_);
}

Word BaseField::pow(Word a, Word e) const {
  Word r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Word BaseField::inv(Word a) const {
  if (a == 0) throw FieldError("inverse of zero");
  if (kind_ == FieldKind::Prime) return powmod_u64(a, q_ - 2, q_);
  return pow(a, q_ - 2);
}

ExtField::ExtField(const BaseField& base, unsigned s) : base_(base), s_(s) {
  if (s < 2) throw FieldError("extension degree must be at least 2");
  if (s > kMaxExtDegree) throw FieldError("extension degree too large");
  // Enumerate monic candidates x^s + c_{s-1}x^{s-1} + ... + c_0 in
  // lexicographic order of (c_{s-1}, ..., c_0) and keep the first
  // irreducible one.
  Poly low(s, 0);
  for (;;) {
    if (poly_irreducible(base_, low, s)) break;
    unsigned i = 0;
    while (i < s) {
      if (++low[i] == base_.size()) {
        low[i] = 0;
        ++i;
      } else {
        break;
      }
    }
    if (i == s) throw FieldError("no irreducible polynomial found");  // unreachable
  }
  modulus_ = std::move(low);
}

ExtField ext_field_build(const BaseField& base, unsigned s) {
  return ExtField(base, s);
}

void ExtField::zero(std::span<Word> out) const {
  std::fill(out.begin(), out.end(), Word{0});
}

void ExtField::one(std::span<Word> out) const {
  zero(out);
  out[0] = 1;
}

bool ExtField::is_zero(std::span<const Word> a) const {
  for (unsigned i = 0; i < s_; ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

bool ExtField::equal(std::span<const Word> a, std::span<const Word> b) const {
  for (unsigned i = 0; i < s_; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

void ExtField::add(std::span<const Word> a, std::span<const Word> b,
                   std::span<Word> out) const {
  for (unsigned i = 0; i < s_; ++i) out[i] = base_.add(a[i], b[i]);
}

void ExtField::sub(std::span<const Word> a, std::span<const Word> b,
                   std::span<Word> out) const {
  for (unsigned i = 0; i < s_; ++i) out[i] = base_.sub(a[i], b[i]);
}

void ExtField::neg(std::span<const Word> a, std::span<Word> out) const {
  for (unsigned i = 0; i < s_; ++i) out[i] = base_.neg(a[i]);
}

void ExtField::mul(std::span<const Word> a, std::span<const Word> b,
                   std::span<Word> out) const {
  std::array<Word, 2 * kMaxExtDegree - 1> buf{};
  for (unsigned i = 0; i < s_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < s_; ++j) {
      if (b[j] == 0) continue;
      buf[i + j] = base_.add(buf[i + j], base_.mul(a[i], b[j]));
    }
  }
  for (unsigned d = 2 * s_ - 2; d + 1 > s_; --d) {
    const Word c = buf[d];
    if (c == 0) continue;
    for (unsigned j = 0; j < s_; ++j) {
      buf[d - s_ + j] = base_.sub(buf[d - s_ + j], base_.mul(c, modulus_[j]));
    }
  }
  std::copy(buf.begin(), buf.begin() + s_, out.begin());
}

void ExtField::mul_scalar(std::span<const Word> a, Word c,
                          std::span<Word> out) const {
  for (unsigned i = 0; i < s_; ++i) out[i] = base_.mul(a[i], c);
}

void ExtField::inv(std::span<const Word> a, std::span<Word> out) const {
  if (is_zero(a)) throw FieldError("inverse of zero");
  // Extended Euclid in F_q[x] against the (monic) modulus.
  Poly r0 = modulus_;
  r0.push_back(1);
  Poly r1(a.begin(), a.begin() + s_);
  poly_trim(r1);
  Poly t0{}, t1{1};
  while (poly_degree(r1) > 0) {
    const int d0 = poly_degree(r0), d1 = poly_degree(r1);
    // one long-division pass: r0 <- r0 mod r1, t0 <- t0 - q*t1
    Poly q(static_cast<std::size_t>(d0 - d1 + 1), 0);
    Poly rem = r0;
    const Word lead_inv = base_.inv(r1[static_cast<std::size_t>(d1)]);
    for (int da = poly_degree(rem); da >= d1; da = poly_degree(rem)) {
      const Word c = base_.mul(rem[static_cast<std::size_t>(da)], lead_inv);
      q[static_cast<std::size_t>(da - d1)] = c;
      for (int j = 0; j <= d1; ++j) {
        auto idx = static_cast<std::size_t>(da - d1 + j);
        rem[idx] = base_.sub(rem[idx], base_.mul(c, r1[static_cast<std::size_t>(j)]));
      }
      poly_trim(rem);
      if (rem.empty()) break;
    }
    Poly t2(std::max(t0.size(), q.size() + t1.size()), 0);
    for (std::size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (std::size_t j = 0; j < t1.size(); ++j) {
        t2[i + j] = base_.sub(t2[i + j], base_.mul(q[i], t1[j]));
      }
    }
    poly_trim(t2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (poly_degree(r1) != 0) throw FieldError("element not invertible");
  const Word c_inv = base_.inv(r1[0]);
  zero(out);
  for (std::size_t i = 0; i < t1.size(); ++i) out[i] = base_.mul(t1[i], c_inv);
}

void ExtField::random(std::span<Word> out, Rng& rng) const {
  for (unsigned i = 0; i < s_; ++i) out[i] = rng.below(base_.size());
}

Basis sample_basis(const ExtField& ext, unsigned v, Rng& rng) {
  const unsigned s = ext.degree();
  if (v < 1 || v >= s) throw FieldError("basis split requires 1 <= v < s");
  const BaseField& F = ext.base();
  Basis b;
  b.s = s;
  b.v = v;
  for (;;) {
    std::vector<Word> g(static_cast<std::size_t>(s) * s);
    for (Word& x : g) x = rng.below(F.size());
    std::vector<Word> inv;
    if (try_invert_square(F, g, s, inv)) {
      b.gamma = std::move(g);
      b.gamma_inv = std::move(inv);
      return b;
    }
  }
}

Basis identity_basis(const ExtField& ext, unsigned v) {
  const unsigned s = ext.degree();
  if (v < 1 || v >= s) throw FieldError("basis split requires 1 <= v < s");
  Basis b;
  b.s = s;
  b.v = v;
  b.gamma.assign(static_cast<std::size_t>(s) * s, 0);
  for (unsigned i = 0; i < s; ++i) b.gamma[static_cast<std::size_t>(i) * s + i] = 1;
  b.gamma_inv = b.gamma;
  return b;
}

void gamma_coords(const ExtField& ext, const Basis& b, std::span<const Word> x,
                  std::span<Word> out) {
  matvec(ext.base(), b.gamma_inv, b.s, x, out);
}

void project_v(const ExtField& ext, const Basis& b, std::span<const Word> x,
               std::span<Word> out) {
  std::array<Word, kMaxExtDegree> coords{};
  gamma_coords(ext, b, x, std::span<Word>(coords.data(), b.s));
  std::copy(coords.begin(), coords.begin() + b.v, out.begin());
}

void project_w(const ExtField& ext, const Basis& b, std::span<const Word> x,
               std::span<Word> out) {
  std::array<Word, kMaxExtDegree> coords{};
  gamma_coords(ext, b, x, std::span<Word>(coords.data(), b.s));
  std::copy(coords.begin() + b.v, coords.begin() + b.s, out.begin());
}

void lift_v(const ExtField& ext, const Basis& b, std::span<const Word> coords,
            std::span<Word> out) {
  std::array<Word, kMaxExtDegree> full{};
  std::copy(coords.begin(), coords.begin() + b.v, full.begin());
  matvec(ext.base(), b.gamma, b.s, std::span<const Word>(full.data(), b.s), out);
}

void lift_w(const ExtField& ext, const Basis& b, std::span<const Word> coords,
            std::span<Word> out) {
  std::array<Word, kMaxExtDegree> full{};
  std::copy(coords.begin(), coords.begin() + b.w(), full.begin() + b.v);
  matvec(ext.base(), b.gamma, b.s, std::span<const Word>(full.data(), b.s), out);
}

MatrixFqs sample_subspace_matrix(std::size_t rows, std::size_t cols,
                                 Subspace space, const ExtField& ext,
                                 const Basis& b, Rng& rng) {
  MatrixFqs m(ext, rows, cols);
  const unsigned dim = space == Subspace::V ? b.v : b.w();
  std::array<Word, kMaxExtDegree> coords{};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      for (unsigned i = 0; i < dim; ++i) coords[i] = rng.below(ext.base().size());
      auto coord_span = std::span<const Word>(coords.data(), dim);
      if (space == Subspace::V) {
        lift_v(ext, b, coord_span, m.at(r, c));
      } else {
        lift_w(ext, b, coord_span, m.at(r, c));
      }
    }
  }
  return m;
}

}  // namespace cbcpir
