#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cbcpir/field.hpp"
#include "cbcpir/rng.hpp"

namespace cbcpir {

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InconsistentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense matrix over the base field F_q, row-major.
class MatrixFq {
 public:
  MatrixFq(const BaseField& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static MatrixFq identity(const BaseField& f, std::size_t n);
  static MatrixFq random(const BaseField& f, std::size_t rows,
                         std::size_t cols, Rng& rng);

  const BaseField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Word at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  Word& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  std::span<const Word> row(std::size_t r) const {
    return {a_.data() + r * cols_, cols_};
  }
  std::span<Word> row(std::size_t r) { return {a_.data() + r * cols_, cols_}; }
  std::span<const Word> data() const { return a_; }
  std::span<Word> data() { return a_; }

  bool operator==(const MatrixFq& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
           a_ == o.a_;
  }
  bool operator!=(const MatrixFq& o) const { return !(*this == o); }

 private:
  BaseField field_;
  std::size_t rows_, cols_;
  std::vector<Word> a_;
};

/// Dense matrix over the extension field F_{q^s}; each entry is s Words in
/// the power basis, row-major over entries.
class MatrixFqs {
 public:
  MatrixFqs(const ExtField& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols),
        a_(rows * cols * f.degree(), 0) {}

  static MatrixFqs identity(const ExtField& f, std::size_t n);
  static MatrixFqs random(const ExtField& f, std::size_t rows,
                          std::size_t cols, Rng& rng);

  const ExtField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  unsigned ext_degree() const { return field_.degree(); }

  std::span<const Word> at(std::size_t r, std::size_t c) const {
    return {a_.data() + (r * cols_ + c) * field_.degree(), field_.degree()};
  }
  std::span<Word> at(std::size_t r, std::size_t c) {
    return {a_.data() + (r * cols_ + c) * field_.degree(), field_.degree()};
  }
  std::span<const Word> data() const { return a_; }
  std::span<Word> data() { return a_; }

  bool operator==(const MatrixFqs& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
           a_ == o.a_;
  }
  bool operator!=(const MatrixFqs& o) const { return !(*this == o); }

 private:
  ExtField field_;
  std::size_t rows_, cols_;
  std::vector<Word> a_;
};

// ---- products ----

MatrixFq mat_mul(const MatrixFq& a, const MatrixFq& b);
MatrixFqs mat_mul(const MatrixFqs& a, const MatrixFqs& b);
/// Mixed product: base-field scalars embed into F_{q^s}. When `fq_muls`
/// is given it accumulates the number of base-field multiplications the
/// naive schedule performs.
MatrixFqs mat_mul(const MatrixFq& a, const MatrixFqs& b,
                  std::uint64_t* fq_muls = nullptr);

MatrixFq mat_add(const MatrixFq& a, const MatrixFq& b);
MatrixFq mat_sub(const MatrixFq& a, const MatrixFq& b);
MatrixFqs mat_add(const MatrixFqs& a, const MatrixFqs& b);
MatrixFqs mat_sub(const MatrixFqs& a, const MatrixFqs& b);

// ---- rank and solving ----

std::size_t rank_fq(const MatrixFq& m);
std::size_t rank_fqs(const MatrixFqs& m);

/// Solve R*a = y for R, where a has full row rank and every row of y lies
/// in the row span of a. Throws RankDeficientError / InconsistentError.
MatrixFq solve_right(const MatrixFq& a, const MatrixFq& y);

/// Inverse of a square matrix over F_{q^s}; throws RankDeficientError.
MatrixFqs invert(const MatrixFqs& m);

// ---- shape operations ----

/// Expand every F_{q^s} entry into its s power-basis coordinates along the
/// row: output is rows x (cols*s), entry j occupying columns js..(j+1)s-1.
MatrixFq flatten_to_fq(const MatrixFqs& m);
/// Inverse of flatten_to_fq (cols of m must be divisible by s).
MatrixFqs unflatten_from_fq(const MatrixFq& m, const ExtField& ext);

/// Kronecker product of a base-field column vector with an extension-field
/// matrix: block i of the result equals vec[i] * m.
MatrixFqs kronecker(std::span<const Word> vec, const MatrixFqs& m);

MatrixFqs columns(const MatrixFqs& m, std::span<const std::uint32_t> idx);
MatrixFq columns(const MatrixFq& m, std::span<const std::uint32_t> idx);
MatrixFqs row_range(const MatrixFqs& m, std::size_t begin, std::size_t count);
MatrixFq row_range(const MatrixFq& m, std::size_t begin, std::size_t count);
/// Copy with rows [begin, begin+count) removed.
MatrixFqs erase_row_range(const MatrixFqs& m, std::size_t begin,
                          std::size_t count);
MatrixFqs hconcat(const MatrixFqs& a, const MatrixFqs& b);

}  // namespace cbcpir
