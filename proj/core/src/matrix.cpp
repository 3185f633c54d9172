#include "cbcpir/matrix.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace cbcpir {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw DimensionError(msg);
}

constexpr unsigned kMaxS = 64;

}  // namespace

MatrixFq MatrixFq::identity(const BaseField& f, std::size_t n) {
  MatrixFq m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatrixFq MatrixFq::random(const BaseField& f, std::size_t rows,
                          std::size_t cols, Rng& rng) {
  MatrixFq m(f, rows, cols);
  for (Word& x : m.a_) x = rng.below(f.size());
  return m;
}

MatrixFqs MatrixFqs::identity(const ExtField& f, std::size_t n) {
  MatrixFqs m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) f.one(m.at(i, i));
  return m;
}

MatrixFqs MatrixFqs::random(const ExtField& f, std::size_t rows,
                            std::size_t cols, Rng& rng) {
  MatrixFqs m(f, rows, cols);
  for (Word& x : m.a_) x = rng.below(f.base().size());
  return m;
}

MatrixFq mat_mul(const MatrixFq& a, const MatrixFq& b) {
  require(a.field() == b.field(), "field mismatch");
  require(a.cols() == b.rows(), "inner dimensions differ");
  const BaseField& F = a.field();
  MatrixFq out(F, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Word aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out.at(i, j) = F.add(out.at(i, j), F.mul(aik, b.at(k, j)));
      }
    }
  }
  return out;
}

MatrixFqs mat_mul(const MatrixFqs& a, const MatrixFqs& b) {
  require(a.field() == b.field(), "field mismatch");
  require(a.cols() == b.rows(), "inner dimensions differ");
  const ExtField& F = a.field();
  MatrixFqs out(F, a.rows(), b.cols());
  std::array<Word, kMaxS> prod{};
  auto p = std::span<Word>(prod.data(), F.degree());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      auto aik = a.at(i, k);
      if (F.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        F.mul(aik, b.at(k, j), p);
        F.add(out.at(i, j), p, out.at(i, j));
      }
    }
  }
  return out;
}

MatrixFqs mat_mul(const MatrixFq& a, const MatrixFqs& b, std::uint64_t* fq_muls) {
  require(a.field() == b.field().base(), "field mismatch");
  require(a.cols() == b.rows(), "inner dimensions differ");
  const ExtField& F = b.field();
  const unsigned s = F.degree();
  MatrixFqs out(F, a.rows(), b.cols());
  std::uint64_t count = 0;
  std::array<Word, kMaxS> prod{};
  auto p = std::span<Word>(prod.data(), s);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Word aik = a.at(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        F.mul_scalar(b.at(k, j), aik, p);
        F.add(out.at(i, j), p, out.at(i, j));
      }
      count += static_cast<std::uint64_t>(b.cols()) * s;
    }
  }
  if (fq_muls) *fq_muls += count;
  return out;
}

MatrixFq mat_add(const MatrixFq& a, const MatrixFq& b) {
  require(a.field() == b.field() && a.rows() == b.rows() && a.cols() == b.cols(),
          "shape mismatch");
  MatrixFq out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) {
    out.data()[i] = a.field().add(a.data()[i], b.data()[i]);
  }
  return out;
}

MatrixFq mat_sub(const MatrixFq& a, const MatrixFq& b) {
  require(a.field() == b.field() && a.rows() == b.rows() && a.cols() == b.cols(),
          "shape mismatch");
  MatrixFq out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) {
    out.data()[i] = a.field().sub(a.data()[i], b.data()[i]);
  }
  return out;
}

MatrixFqs mat_add(const MatrixFqs& a, const MatrixFqs& b) {
  require(a.field() == b.field() && a.rows() == b.rows() && a.cols() == b.cols(),
          "shape mismatch");
  MatrixFqs out = a;
  const BaseField& F = a.field().base();
  for (std::size_t i = 0; i < out.data().size(); ++i) {
    out.data()[i] = F.add(a.data()[i], b.data()[i]);
  }
  return out;
}

MatrixFqs mat_sub(const MatrixFqs& a, const MatrixFqs& b) {
  require(a.field() == b.field() && a.rows() == b.rows() && a.cols() == b.cols(),
          "shape mismatch");
  MatrixFqs out = a;
  const BaseField& F = a.field().base();
  for (std::size_t i = 0; i < out.data().size(); ++i) {
    out.data()[i] = F.sub(a.data()[i], b.data()[i]);
  }
  return out;
}

namespace {

// In-place row echelon over F_q; returns rank. First nonzero entry in
// column order is the pivot.
std::size_t echelon_fq(const BaseField& F, std::vector<Word>& a,
                       std::size_t rows, std::size_t cols) {
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t piv = pr;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != pr) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[pr * cols + j]);
    }
    const Word f = F.inv(a[pr * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[pr * cols + j] = F.mul(a[pr * cols + j], f);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr) continue;
      const Word x = a[r * cols + c];
      if (x == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        a[r * cols + j] = F.sub(a[r * cols + j], F.mul(x, a[pr * cols + j]));
      }
    }
    ++pr;
  }
  return pr;
}

}  // namespace

std::size_t rank_fq(const MatrixFq& m) {
  std::vector<Word> a(m.data().begin(), m.data().end());
  return echelon_fq(m.field(), a, m.rows(), m.cols());
}

std::size_t rank_fqs(const MatrixFqs& m) {
  const ExtField& F = m.field();
  const unsigned s = F.degree();
  std::vector<Word> a(m.data().begin(), m.data().end());
  const std::size_t rows = m.rows(), cols = m.cols();
  auto entry = [&](std::size_t r, std::size_t c) {
    return std::span<Word>(a.data() + (r * cols + c) * s, s);
  };
  std::array<Word, kMaxS> tmp{}, coef{};
  auto t = std::span<Word>(tmp.data(), s);
  auto cf = std::span<Word>(coef.data(), s);
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t piv = pr;
    while (piv < rows && F.is_zero(entry(piv, c))) ++piv;
    if (piv == rows) continue;
    if (piv != pr) {
      for (std::size_t j = c; j < cols; ++j) {
        for (unsigned i = 0; i < s; ++i) std::swap(entry(piv, j)[i], entry(pr, j)[i]);
      }
    }
    F.inv(entry(pr, c), cf);
    std::array<Word, kMaxS> lead{};
    std::copy(cf.begin(), cf.end(), lead.begin());
    for (std::size_t j = c; j < cols; ++j) {
      F.mul(entry(pr, j), std::span<const Word>(lead.data(), s), t);
      std::copy(t.begin(), t.end(), entry(pr, j).begin());
    }
    for (std::size_t r = pr + 1; r < rows; ++r) {
      if (F.is_zero(entry(r, c))) continue;
      std::array<Word, kMaxS> x{};
      std::copy(entry(r, c).begin(), entry(r, c).end(), x.begin());
      for (std::size_t j = c; j < cols; ++j) {
        F.mul(std::span<const Word>(x.data(), s), entry(pr, j), t);
        F.sub(entry(r, j), t, entry(r, j));
      }
    }
    ++pr;
  }
  return pr;
}

MatrixFq solve_right(const MatrixFq& a, const MatrixFq& y) {
  require(a.field() == y.field(), "field mismatch");
  require(a.cols() == y.cols(), "column counts differ");
  const BaseField& F = a.field();
  const std::size_t r = a.rows(), c = a.cols(), L = y.rows();
  // Row-reduce [a | I] to find the combination matrix, tracking pivots.
  std::vector<Word> work(r * (c + r), 0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) work[i * (c + r) + j] = a.at(i, j);
    work[i * (c + r) + c + i] = 1;
  }
  const std::size_t wcols = c + r;
  std::vector<std::size_t> pivot_col;
  std::size_t pr = 0;
  for (std::size_t col = 0; col < c && pr < r; ++col) {
    std::size_t piv = pr;
    while (piv < r && work[piv * wcols + col] == 0) ++piv;
    if (piv == r) continue;
    if (piv != pr) {
      for (std::size_t j = 0; j < wcols; ++j) std::swap(work[piv * wcols + j], work[pr * wcols + j]);
    }
    const Word f = F.inv(work[pr * wcols + col]);
    for (std::size_t j = 0; j < wcols; ++j) work[pr * wcols + j] = F.mul(work[pr * wcols + j], f);
    for (std::size_t row = 0; row < r; ++row) {
      if (row == pr) continue;
      const Word x = work[row * wcols + col];
      if (x == 0) continue;
      for (std::size_t j = 0; j < wcols; ++j) {
        work[row * wcols + j] = F.sub(work[row * wcols + j], F.mul(x, work[pr * wcols + j]));
      }
    }
    pivot_col.push_back(col);
    ++pr;
  }
  if (pr < r) throw RankDeficientError("matrix does not have full row rank");
  // Now row i of `work` encodes a combination T[i] of a's rows whose value
  // is the unit vector on pivot column pivot_col[i] of the reduced system.
  // For each row of y: express it in the reduced basis, then verify.
  MatrixFq out(F, L, r);
  for (std::size_t t = 0; t < L; ++t) {
    std::vector<Word> coeff(r, 0);
    std::vector<Word> resid(y.row(t).begin(), y.row(t).end());
    for (std::size_t i = 0; i < r; ++i) {
      const Word x = resid[pivot_col[i]];
      coeff[i] = x;
      if (x == 0) continue;
      // subtract x * reduced_row_i from the residual
      for (std::size_t j = 0; j < c; ++j) {
        resid[j] = F.sub(resid[j], F.mul(x, work[i * wcols + j]));
      }
    }
    for (std::size_t j = 0; j < c; ++j) {
      if (resid[j] != 0) throw InconsistentError("row outside the row span");
    }
    // R[t] = coeff expressed against original rows: coeff_i * T[i]
    for (std::size_t i = 0; i < r; ++i) {
      if (coeff[i] == 0) continue;
      for (std::size_t j = 0; j < r; ++j) {
        out.at(t, j) = F.add(out.at(t, j), F.mul(coeff[i], work[i * wcols + c + j]));
      }
    }
  }
  return out;
}

MatrixFqs invert(const MatrixFqs& m) {
  require(m.rows() == m.cols(), "inverse requires a square matrix");
  const ExtField& F = m.field();
  const unsigned s = F.degree();
  const std::size_t n = m.rows();
  MatrixFqs work = m;
  MatrixFqs inv = MatrixFqs::identity(F, n);
  std::array<Word, kMaxS> tmp{}, lead{}, x{};
  auto t = std::span<Word>(tmp.data(), s);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && F.is_zero(work.at(piv, col))) ++piv;
    if (piv == n) throw RankDeficientError("singular matrix");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        for (unsigned i = 0; i < s; ++i) {
          std::swap(work.at(piv, j)[i], work.at(col, j)[i]);
          std::swap(inv.at(piv, j)[i], inv.at(col, j)[i]);
        }
      }
    }
    F.inv(work.at(col, col), std::span<Word>(lead.data(), s));
    for (std::size_t j = 0; j < n; ++j) {
      F.mul(work.at(col, j), std::span<const Word>(lead.data(), s), t);
      std::copy(t.begin(), t.end(), work.at(col, j).begin());
      F.mul(inv.at(col, j), std::span<const Word>(lead.data(), s), t);
      std::copy(t.begin(), t.end(), inv.at(col, j).begin());
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || F.is_zero(work.at(r, col))) continue;
      std::copy(work.at(r, col).begin(), work.at(r, col).end(), x.begin());
      auto xs = std::span<const Word>(x.data(), s);
      for (std::size_t j = 0; j < n; ++j) {
        F.mul(xs, work.at(col, j), t);
        F.sub(work.at(r, j), t, work.at(r, j));
        F.mul(xs, inv.at(col, j), t);
        F.sub(inv.at(r, j), t, inv.at(r, j));
      }
    }
  }
  return inv;
}

MatrixFq flatten_to_fq(const MatrixFqs& m) {
  const unsigned s = m.ext_degree();
  MatrixFq out(m.field().base(), m.rows(), m.cols() * s);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      auto e = m.at(r, c);
      for (unsigned i = 0; i < s; ++i) out.at(r, c * s + i) = e[i];
    }
  }
  return out;
}

MatrixFqs unflatten_from_fq(const MatrixFq& m, const ExtField& ext) {
  const unsigned s = ext.degree();
  require(m.cols() % s == 0, "column count not divisible by extension degree");
  require(m.field() == ext.base(), "field mismatch");
  MatrixFqs out(ext, m.rows(), m.cols() / s);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      auto e = out.at(r, c);
      for (unsigned i = 0; i < s; ++i) e[i] = m.at(r, c * s + i);
    }
  }
  return out;
}

MatrixFqs kronecker(std::span<const Word> vec, const MatrixFqs& m) {
  const ExtField& F = m.field();
  MatrixFqs out(F, vec.size() * m.rows(), m.cols());
  for (std::size_t b = 0; b < vec.size(); ++b) {
    const Word c = vec[b];
    if (c == 0) continue;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        F.mul_scalar(m.at(r, j), c, out.at(b * m.rows() + r, j));
      }
    }
  }
  return out;
}

MatrixFqs columns(const MatrixFqs& m, std::span<const std::uint32_t> idx) {
  MatrixFqs out(m.field(), m.rows(), idx.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      auto src = m.at(r, idx[j]);
      std::copy(src.begin(), src.end(), out.at(r, j).begin());
    }
  }
  return out;
}

MatrixFq columns(const MatrixFq& m, std::span<const std::uint32_t> idx) {
  MatrixFq out(m.field(), m.rows(), idx.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t j = 0; j < idx.size(); ++j) out.at(r, j) = m.at(r, idx[j]);
  }
  return out;
}

MatrixFqs row_range(const MatrixFqs& m, std::size_t begin, std::size_t count) {
  require(begin + count <= m.rows(), "row range out of bounds");
  MatrixFqs out(m.field(), count, m.cols());
  std::copy(m.data().begin() + begin * m.cols() * m.ext_degree(),
            m.data().begin() + (begin + count) * m.cols() * m.ext_degree(),
            out.data().begin());
  return out;
}

MatrixFq row_range(const MatrixFq& m, std::size_t begin, std::size_t count) {
  require(begin + count <= m.rows(), "row range out of bounds");
  MatrixFq out(m.field(), count, m.cols());
  std::copy(m.data().begin() + begin * m.cols(),
            m.data().begin() + (begin + count) * m.cols(), out.data().begin());
  return out;
}

MatrixFqs erase_row_range(const MatrixFqs& m, std::size_t begin,
                          std::size_t count) {
  require(begin + count <= m.rows(), "row range out of bounds");
  MatrixFqs out(m.field(), m.rows() - count, m.cols());
  const std::size_t stride = m.cols() * m.ext_degree();
  auto dst = out.data().begin();
  dst = std::copy(m.data().begin(), m.data().begin() + begin * stride, dst);
  std::copy(m.data().begin() + (begin + count) * stride, m.data().end(), dst);
  return out;
}

MatrixFqs hconcat(const MatrixFqs& a, const MatrixFqs& b) {
  require(a.field() == b.field() && a.rows() == b.rows(), "shape mismatch");
  MatrixFqs out(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      auto src = a.at(r, c);
      std::copy(src.begin(), src.end(), out.at(r, c).begin());
    }
    for (std::size_t c = 0; c < b.cols(); ++c) {
      auto src = b.at(r, c);
      std::copy(src.begin(), src.end(), out.at(r, a.cols() + c).begin());
    }
  }
  return out;
}

}  // namespace cbcpir
