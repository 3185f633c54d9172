#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cbcpir/rng.hpp"

namespace cbcpir {

using Word = std::uint64_t;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FieldKind : std::uint8_t { Prime = 0, Binary = 1 };

/// Base field F_q. Two backends: a prime modulus p < 2^64, and GF(2^b)
/// for b <= 32 with a fixed reduction polynomial per b (the
/// lexicographically smallest irreducible, found at construction).
/// Elements are plain Word values in [0, q).
class BaseField {
 public:
  static BaseField prime(Word p);
  static BaseField binary(unsigned bits);

  FieldKind kind() const { return kind_; }
  Word size() const { return q_; }
  unsigned degree_bits() const { return bits_; }  // binary backend only
  Word modulus() const { return mod_; }           // p, or reduction poly bits

  /// Bytes per serialized coordinate: 8 for prime, ceil(b/8) for binary.
  unsigned coord_bytes() const {
    return kind_ == FieldKind::Prime ? 8 : (bits_ + 7) / 8;
  }

  Word add(Word a, Word b) const {
    if (kind_ == FieldKind::Binary) return a ^ b;
    Word s = a + b;
    if (s >= q_ || s < a) s -= q_;
    return s;
  }
  Word sub(Word a, Word b) const {
    if (kind_ == FieldKind::Binary) return a ^ b;
    return a >= b ? a - b : a + (q_ - b);
  }
  Word neg(Word a) const {
    if (kind_ == FieldKind::Binary) return a;
    return a == 0 ? 0 : q_ - a;
  }
  Word mul(Word a, Word b) const;
  Word inv(Word a) const;
  Word pow(Word a, Word e) const;

  bool operator==(const BaseField& o) const {
    return kind_ == o.kind_ && q_ == o.q_ && mod_ == o.mod_;
  }
  bool operator!=(const BaseField& o) const { return !(*this == o); }

 private:
  BaseField(FieldKind kind, Word q, Word mod, unsigned bits)
      : kind_(kind), q_(q), mod_(mod), bits_(bits) {}

  FieldKind kind_;
  Word q_;
  Word mod_;
  unsigned bits_;
};

/// Extension field F_{q^s}. Elements are coordinate vectors of length s
/// over F_q in the power basis, handled as spans of Words. The defining
/// modulus is the lexicographically smallest monic irreducible polynomial
/// of degree s over F_q, so two builds with equal (q, s) agree and
/// serialized data is portable without shipping the polynomial.
class ExtField {
 public:
  ExtField(const BaseField& base, unsigned s);

  const BaseField& base() const { return base_; }
  unsigned degree() const { return s_; }
  /// Low-order s coefficients of the modulus (the leading 1 is implicit).
  std::span<const Word> modulus() const { return modulus_; }

  void zero(std::span<Word> out) const;
  void one(std::span<Word> out) const;
  bool is_zero(std::span<const Word> a) const;
  bool equal(std::span<const Word> a, std::span<const Word> b) const;

  void add(std::span<const Word> a, std::span<const Word> b,
           std::span<Word> out) const;
  void sub(std::span<const Word> a, std::span<const Word> b,
           std::span<Word> out) const;
  void neg(std::span<const Word> a, std::span<Word> out) const;
  void mul(std::span<const Word> a, std::span<const Word> b,
           std::span<Word> out) const;
  /// Multiply by an embedded base-field scalar (coordinatewise).
  void mul_scalar(std::span<const Word> a, Word c, std::span<Word> out) const;
  void inv(std::span<const Word> a, std::span<Word> out) const;

  void random(std::span<Word> out, Rng& rng) const;

  bool operator==(const ExtField& o) const {
    return base_ == o.base_ && s_ == o.s_ && modulus_ == o.modulus_;
  }
  bool operator!=(const ExtField& o) const { return !(*this == o); }

 private:
  BaseField base_;
  unsigned s_;
  std::vector<Word> modulus_;
};

/// Spec-facing constructor name.
ExtField ext_field_build(const BaseField& base, unsigned s);

/// Secret basis Gamma of F_{q^s} over F_q together with the split point v.
/// Column j of gamma holds the power-basis coordinates of gamma_j. The
/// first v columns span the masking subspace V, the remaining w = s - v
/// span W, and V + W = F_{q^s} because gamma is invertible.
struct Basis {
  unsigned s = 0;
  unsigned v = 0;
  std::vector<Word> gamma;      // s*s row-major
  std::vector<Word> gamma_inv;  // s*s row-major

  unsigned w() const { return s - v; }
};

Basis sample_basis(const ExtField& ext, unsigned v, Rng& rng);
/// gamma = identity; V is spanned by the first v power-basis vectors.
Basis identity_basis(const ExtField& ext, unsigned v);

/// Coordinates of x with respect to gamma (all s of them).
void gamma_coords(const ExtField& ext, const Basis& b, std::span<const Word> x,
                  std::span<Word> out);
/// psi_V: first v gamma-coordinates of x.
void project_v(const ExtField& ext, const Basis& b, std::span<const Word> x,
               std::span<Word> out);
/// psi_W: last w gamma-coordinates of x.
void project_w(const ExtField& ext, const Basis& b, std::span<const Word> x,
               std::span<Word> out);
/// Element of V with the given v gamma-coordinates.
void lift_v(const ExtField& ext, const Basis& b, std::span<const Word> coords,
            std::span<Word> out);
/// Element of W with the given w gamma-coordinates.
void lift_w(const ExtField& ext, const Basis& b, std::span<const Word> coords,
            std::span<Word> out);

enum class Subspace : std::uint8_t { V, W };

class MatrixFqs;

/// rows x cols matrix whose every entry is a uniform element of the chosen
/// subspace of the basis split.
MatrixFqs sample_subspace_matrix(std::size_t rows, std::size_t cols,
                                 Subspace space, const ExtField& ext,
                                 const Basis& b, Rng& rng);

}  // namespace cbcpir
