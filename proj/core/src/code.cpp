#include "cbcpir/code.hpp"

#include <algorithm>
#include <numeric>

namespace cbcpir {

MatrixFqs LinearCode::parity_check() const {
  // Solve for a basis of the right kernel of gen by reducing [gen^T | I_n]
  // over F_{q^s}: kernel rows of the identity part paired with zero rows.
  const ExtField& F = gen.field();
  const unsigned s = F.degree();
  const std::size_t rows = n, cols = k;
  MatrixFqs work(F, rows, cols + rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      auto src = gen.at(c, r);  // transpose
      std::copy(src.begin(), src.end(), work.at(r, c).begin());
    }
    F.one(work.at(r, cols + r));
  }
  std::vector<Word> tmp(s), lead(s), x(s);
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t piv = pr;
    while (piv < rows && F.is_zero(work.at(piv, c))) ++piv;
    if (piv == rows) continue;
    if (piv != pr) {
      for (std::size_t j = 0; j < cols + rows; ++j) {
        for (unsigned i = 0; i < s; ++i) std::swap(work.at(piv, j)[i], work.at(pr, j)[i]);
      }
    }
    F.inv(work.at(pr, c), lead);
    for (std::size_t j = 0; j < cols + rows; ++j) {
      F.mul(work.at(pr, j), lead, tmp);
      std::copy(tmp.begin(), tmp.end(), work.at(pr, j).begin());
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr || F.is_zero(work.at(r, c))) continue;
      std::copy(work.at(r, c).begin(), work.at(r, c).end(), x.begin());
      for (std::size_t j = 0; j < cols + rows; ++j) {
        F.mul(std::span<const Word>(x.data(), s), work.at(pr, j), tmp);
        F.sub(work.at(r, j), tmp, work.at(r, j));
      }
    }
    ++pr;
  }
  MatrixFqs h(F, n - k, n);
  std::size_t out_row = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    bool zero_left = true;
    for (std::size_t c = 0; c < cols && zero_left; ++c) {
      zero_left = F.is_zero(work.at(r, c));
    }
    if (!zero_left) continue;
    for (std::size_t j = 0; j < rows; ++j) {
      auto src = work.at(r, cols + j);
      std::copy(src.begin(), src.end(), h.at(out_row, j).begin());
    }
    ++out_row;
  }
  if (out_row != n - k) throw CodeError("generator matrix is rank deficient");
  return h;
}

LinearCode sample_code(std::uint32_t n, std::uint32_t k, const ExtField& ext,
                       Rng& rng) {
  if (k < 1 || k >= n) throw CodeError("code requires 1 <= k < n");
  for (;;) {
    MatrixFqs gen = MatrixFqs::random(ext, k, n, rng);
    if (rank_fqs(gen) == k) return LinearCode{n, k, std::move(gen)};
  }
}

InformationSet sample_information_set(const LinearCode& c, Rng& rng) {
  const std::size_t attempt_cap = 64ull * c.n;
  std::vector<std::uint32_t> all(c.n);
  std::iota(all.begin(), all.end(), 0u);
  for (std::size_t attempt = 0; attempt < attempt_cap; ++attempt) {
    // Fisher-Yates prefix draw of a uniform k-subset.
    std::vector<std::uint32_t> pool = all;
    for (std::uint32_t i = 0; i < c.k; ++i) {
      const std::size_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    std::vector<std::uint32_t> idx(pool.begin(), pool.begin() + c.k);
    std::sort(idx.begin(), idx.end());
    try {
      MatrixFqs inv = invert(columns(c.gen, idx));
      std::vector<std::uint32_t> comp;
      comp.reserve(c.n - c.k);
      std::size_t p = 0;
      for (std::uint32_t col = 0; col < c.n; ++col) {
        if (p < idx.size() && idx[p] == col) {
          ++p;
        } else {
          comp.push_back(col);
        }
      }
      return InformationSet{std::move(idx), std::move(comp), std::move(inv)};
    } catch (const RankDeficientError&) {
      continue;
    }
  }
  throw CodeError("no information set found within the attempt cap");
}

MatrixFqs sample_codeword_matrix(const LinearCode& c, std::size_t rows,
                                 Rng& rng) {
  MatrixFqs msg = MatrixFqs::random(c.gen.field(), rows, c.k, rng);
  return mat_mul(msg, c.gen);
}

ErasureDecoding erasure_decode(const MatrixFqs& a, const LinearCode& c,
                               const InformationSet& iset) {
  if (a.cols() != c.n) throw DimensionError("column count differs from code length");
  MatrixFqs on_iset = columns(a, iset.indices);
  MatrixFqs code_part = mat_mul(mat_mul(on_iset, iset.inv), c.gen);
  MatrixFqs err_part = mat_sub(a, code_part);
  return ErasureDecoding{std::move(code_part), std::move(err_part)};
}

}  // namespace cbcpir
