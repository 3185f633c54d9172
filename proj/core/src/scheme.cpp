#include "cbcpir/scheme.hpp"

#include <algorithm>
#include <cassert>

namespace cbcpir {
namespace {

constexpr int kDeltaRankRetryCap = 100;

/// Place the columns of m0 at the given positions of an otherwise-zero
/// rows x n matrix (the phi_{I-bar} zero extension).
MatrixFqs extend_columns(const MatrixFqs& m0,
                         std::span<const std::uint32_t> positions,
                         std::uint32_t n) {
  MatrixFqs out(m0.field(), m0.rows(), n);
  for (std::size_t r = 0; r < m0.rows(); ++r) {
    for (std::size_t j = 0; j < positions.size(); ++j) {
      auto src = m0.at(r, j);
      std::copy(src.begin(), src.end(), out.at(r, positions[j]).begin());
    }
  }
  return out;
}

/// W-coordinates of every entry, laid out entry-major: entry j of a row
/// occupies columns [j*w, (j+1)*w).
MatrixFq w_coords_matrix(const MatrixFqs& m, const Basis& b) {
  const unsigned w = b.w();
  MatrixFq out(m.field().base(), m.rows(), m.cols() * w);
  std::vector<Word> coords(w);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      project_w(m.field(), b, m.at(r, c), coords);
      for (unsigned i = 0; i < w; ++i) out.at(r, c * w + i) = coords[i];
    }
  }
  return out;
}

/// Uniform draw from F_q^x minus the additive inverse of 1, so that both
/// beta and beta + e_i stay full weight.
Word draw_beta_coord(const BaseField& F, Rng& rng) {
  const Word q = F.size();
  const Word idx = rng.below(q - 2);
  // prime backend: -1 is q-1, allowed values 1..q-2
  // binary backend: -1 is 1, allowed values 2..q-1
  return F.kind() == FieldKind::Prime ? idx + 1 : idx + 2;
}

/// Stacked Delta-term for the MatrixS variant: block j equals
/// S_j * delta_mat, with the identity added to block `bump` when set.
MatrixFqs matrix_s_term(const MatrixFq& s_stack, const MatrixFqs& delta_mat,
                        std::uint64_t m, std::optional<std::uint64_t> bump) {
  const std::uint32_t delta = static_cast<std::uint32_t>(delta_mat.rows());
  MatrixFqs out(delta_mat.field(), m * delta, delta_mat.cols());
  for (std::uint64_t j = 0; j < m; ++j) {
    MatrixFq block = row_range(s_stack, j * delta, delta);
    if (bump && *bump == j) {
      block = mat_add(block, MatrixFq::identity(block.field(), delta));
    }
    MatrixFqs prod = mat_mul(block, delta_mat);
    std::copy(prod.data().begin(), prod.data().end(),
              out.data().begin() +
                  static_cast<std::size_t>(j) * delta * delta_mat.cols() *
                      delta_mat.ext_degree());
  }
  return out;
}

/// One HHW-style block D + E + <mask term>.
MatrixFqs assemble_block(const SecretState& st, const MatrixFqs& mask_term) {
  return mat_add(mat_add(st.d, st.e), mask_term);
}

/// Decode one answer block back to R = X * (coefficient combination):
/// erasure-decode, project the off-information-set error onto W, and solve
/// against the W-coordinates of Delta.
MatrixFq decode_block(const MatrixFqs& a_block, const SecretState& st) {
  ErasureDecoding ed = erasure_decode(a_block, st.code, st.iset);
  MatrixFqs err_off = columns(ed.err_part, st.iset.complement);
  MatrixFq err_w = w_coords_matrix(err_off, st.basis);
  MatrixFqs delta_off = columns(st.delta_mat, st.iset.complement);
  MatrixFq delta_w = w_coords_matrix(delta_off, st.basis);
  return solve_right(delta_w, err_w);
}

}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Hhw:
      return "hhw";
    case Variant::Beta:
      return "beta";
    case Variant::MatrixS:
      return "matrix-s";
  }
  return "?";
}

BaseField Params::base_field() const {
  if (field_kind == FieldKind::Binary) {
    unsigned bits = 0;
    while ((Word{1} << bits) < q) ++bits;
    if ((Word{1} << bits) != q) {
      throw SchemeError("binary field size must be a power of two");
    }
    return BaseField::binary(bits);
  }
  return BaseField::prime(q);
}

void Params::validate() const {
  if (q < 2) throw SchemeError("field size must be at least 2");
  base_field();  // backend-specific checks
  if (s < 2) throw SchemeError("extension degree must be at least 2");
  if (v < 1 || v >= s) throw SchemeError("require 1 <= v < s");
  if (k < 1 || k >= n) throw SchemeError("require 1 <= k < n");
  if (m < 1) throw SchemeError("require at least one file");
  if (L < 1) throw SchemeError("require at least one row per file");
  const std::uint64_t bound = std::uint64_t(n - k) * (s - v);
  if (delta < 1 || delta > bound) {
    throw SchemeError("subpacketization exceeds (n-k)(s-v)");
  }
  if (variant == Variant::Beta && q < 3) {
    throw SchemeError("beta variant needs q >= 3 to keep masks full weight");
  }
}

MatrixFqs Query::concat() const {
  if (blocks.size() == 1) return blocks[0];
  return hconcat(blocks[0], blocks[1]);
}

Query Query::split(const MatrixFqs& wire, std::uint32_t n) {
  if (wire.cols() == n) return Query{{wire}};
  if (wire.cols() != 2ull * n) throw SchemeError("query width is neither n nor 2n");
  std::vector<std::uint32_t> left(n), right(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    left[i] = i;
    right[i] = n + i;
  }
  return Query{{columns(wire, left), columns(wire, right)}};
}

MatrixFq Database::file(std::uint64_t j) const {
  if (j >= files()) throw SchemeError("file index out of range");
  std::vector<std::uint32_t> idx(delta);
  for (std::uint32_t c = 0; c < delta; ++c) {
    idx[c] = static_cast<std::uint32_t>(j * delta + c);
  }
  return columns(x, idx);
}

Database random_database(const Params& p, Rng& rng) {
  p.validate();
  return Database{MatrixFq::random(p.base_field(), p.L, p.m * p.delta, rng),
                  p.delta};
}

SecretState secretively_sample(const Params& p, const ExtField& ext, Rng& rng) {
  const std::uint64_t rows = p.m * p.delta;
  LinearCode code = sample_code(p.n, p.k, ext, rng);
  MatrixFqs d = sample_codeword_matrix(code, rows, rng);
  InformationSet iset = sample_information_set(code, rng);
  Basis basis = sample_basis(ext, p.v, rng);
  MatrixFqs e0 = sample_subspace_matrix(rows, p.n - p.k, Subspace::V, ext,
                                        basis, rng);
  MatrixFqs e = extend_columns(e0, iset.complement, p.n);
  for (int attempt = 0; attempt < kDeltaRankRetryCap; ++attempt) {
    MatrixFqs delta0 = sample_subspace_matrix(p.delta, p.n - p.k, Subspace::W,
                                              ext, basis, rng);
    if (rank_fq(w_coords_matrix(delta0, basis)) == p.delta) {
      return SecretState{std::move(code), std::move(iset), std::move(basis),
                         std::move(d), std::move(e),
                         extend_columns(delta0, iset.complement, p.n)};
    }
  }
  throw SchemeError("no full-rank Delta draw within the retry cap");
}

BuiltQuery build_query(const Params& p, const ExtField& ext,
                       std::uint64_t index, Rng& rng) {
  p.validate();
  if (index >= p.m) throw SchemeError("file index out of range");
  const BaseField F = p.base_field();

  if (p.variant == Variant::Hhw) {
    SecretState st = secretively_sample(p, ext, rng);
    std::vector<Word> unit(p.m, 0);
    unit[index] = 1;
    MatrixFqs q = assemble_block(st, kronecker(unit, st.delta_mat));
    QuerySecret qs;
    qs.variant = p.variant;
    qs.target = index;
    qs.s1 = std::move(st);
    return BuiltQuery{Query{{std::move(q)}}, std::move(qs)};
  }

  SecretState st1 = secretively_sample(p, ext, rng);
  SecretState st2 = secretively_sample(p, ext, rng);
  QuerySecret qs;
  qs.variant = p.variant;
  qs.target = index;

  MatrixFqs term1(ext, 0, 0);
  MatrixFqs term2(ext, 0, 0);
  if (p.variant == Variant::Beta) {
    // Every coordinate is drawn away from 0 and -1, so beta and
    // beta + e_i are both full weight and the draw never looks at the
    // target index.
    std::vector<Word> beta(p.m);
    for (Word& b : beta) b = draw_beta_coord(F, rng);
    std::vector<Word> v2 = beta;
    v2[index] = F.add(v2[index], 1);
    term1 = kronecker(beta, st1.delta_mat);
    term2 = kronecker(v2, st2.delta_mat);
    qs.beta = std::move(beta);
  } else {
    MatrixFq s_stack(F, 0, 0);
    for (;;) {
      s_stack = MatrixFq::random(F, p.m * p.delta, p.delta, rng);
      bool any_zero_block = false;
      for (std::uint64_t j = 0; j < p.m && !any_zero_block; ++j) {
        auto blk = row_range(s_stack, j * p.delta, p.delta);
        any_zero_block = std::all_of(blk.data().begin(), blk.data().end(),
                                     [](Word x) { return x == 0; });
      }
      if (!any_zero_block) break;
    }
    term1 = matrix_s_term(s_stack, st1.delta_mat, p.m, std::nullopt);
    term2 = matrix_s_term(s_stack, st2.delta_mat, p.m, index);
    qs.mask_stack = std::move(s_stack);
  }

  MatrixFqs q1 = assemble_block(st1, term1);
  MatrixFqs q2 = assemble_block(st2, term2);
  qs.s1 = std::move(st1);
  qs.s2 = std::move(st2);
  return BuiltQuery{Query{{std::move(q1), std::move(q2)}}, std::move(qs)};
}

BuiltQuery build_followup_query(const Params& p, const ExtField& ext,
                                const QuerySecret& prior,
                                std::uint64_t new_index, Rng& rng) {
  p.validate();
  if (new_index >= p.m) throw SchemeError("file index out of range");
  if (prior.variant == Variant::Hhw) {
    throw SchemeError("follow-up queries need a two-block variant");
  }
  SecretState st2 = secretively_sample(p, ext, rng);
  QuerySecret qs;
  qs.variant = prior.variant;
  qs.target = new_index;
  MatrixFqs term(ext, 0, 0);
  if (prior.variant == Variant::Beta) {
    std::vector<Word> v2 = prior.beta;
    v2[new_index] = p.base_field().add(v2[new_index], 1);
    term = kronecker(v2, st2.delta_mat);
    qs.beta = prior.beta;
  } else {
    term = matrix_s_term(*prior.mask_stack, st2.delta_mat, p.m, new_index);
    qs.mask_stack = prior.mask_stack;
  }
  MatrixFqs q2 = assemble_block(st2, term);
  qs.s2 = std::move(st2);
  return BuiltQuery{Query{{std::move(q2)}}, std::move(qs)};
}

MatrixFqs answer(const Database& db, const Query& q, std::uint64_t* fq_muls) {
  if (q.blocks.empty()) throw SchemeError("empty query");
  MatrixFqs a = mat_mul(db.x, q.blocks[0], fq_muls);
  for (std::size_t b = 1; b < q.blocks.size(); ++b) {
    a = hconcat(a, mat_mul(db.x, q.blocks[b], fq_muls));
  }
  return a;
}

Recovered recover_full(const MatrixFqs& a, const QuerySecret& qs,
                       const Params& p) {
  if (qs.variant == Variant::Hhw) {
    if (!qs.s1) throw SchemeError("missing first-block secret");
    MatrixFq r = decode_block(a, *qs.s1);
    return Recovered{r, r};
  }
  if (!qs.s1 || !qs.s2) throw SchemeError("missing block secrets");
  if (a.cols() != 2ull * p.n) throw DimensionError("answer width is not 2n");
  std::vector<std::uint32_t> left(p.n), right(p.n);
  for (std::uint32_t i = 0; i < p.n; ++i) {
    left[i] = i;
    right[i] = p.n + i;
  }
  MatrixFq r1 = decode_block(columns(a, left), *qs.s1);
  MatrixFq r2 = decode_block(columns(a, right), *qs.s2);
  return Recovered{mat_sub(r2, r1), std::move(r1)};
}

MatrixFq recover(const MatrixFqs& a, const QuerySecret& qs, const Params& p) {
  return recover_full(a, qs, p).file;
}

MatrixFq reuse_r1(const MatrixFq& r1_cached, const MatrixFqs& a2,
                  const QuerySecret& qs2, const Params& p) {
  if (qs2.variant == Variant::Hhw) {
    throw SchemeError("cached decodes need a two-block variant");
  }
  if (!qs2.s2) throw SchemeError("missing second-block secret");
  if (a2.cols() != p.n) throw DimensionError("follow-up answer width is not n");
  MatrixFq r2 = decode_block(a2, *qs2.s2);
  return mat_sub(r2, r1_cached);
}

}  // namespace cbcpir
