#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cbcpir/code.hpp"
#include "cbcpir/field.hpp"
#include "cbcpir/matrix.hpp"
#include "cbcpir/rng.hpp"

namespace cbcpir {

class SchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Query construction variants. MatrixS is the hardened default; Beta and
/// Hhw are retained behind explicit selection for attack demonstrations.
enum class Variant : std::uint8_t { Hhw = 0, Beta = 1, MatrixS = 2 };

const char* variant_name(Variant v);

/// Public protocol parameters.
struct Params {
  FieldKind field_kind = FieldKind::Prime;
  Word q = 0;               // field size: prime p, or 2^b for the binary backend
  std::uint32_t s = 0;      // extension degree
  std::uint32_t v = 0;      // masking subspace dimension, 1 <= v < s
  std::uint32_t n = 0;      // code length
  std::uint32_t k = 0;      // code dimension
  std::uint32_t delta = 0;  // subpacketization, <= (n-k)(s-v)
  std::uint64_t m = 0;      // number of files
  std::uint64_t L = 0;      // rows per file
  Variant variant = Variant::MatrixS;

  std::uint32_t w() const { return s - v; }
  BaseField base_field() const;
  void validate() const;
};

/// One query-side secret bundle: the code, its information set, the basis
/// split, the codeword matrix D, the V-noise E and the W-matrix Delta (the
/// latter two supported off the information set).
struct SecretState {
  LinearCode code;
  InformationSet iset;
  Basis basis;
  MatrixFqs d;          // m*delta x n, rows are codewords
  MatrixFqs e;          // m*delta x n, entries in V, zero on I
  MatrixFqs delta_mat;  // delta x n, entries in W, zero on I, flattened rank delta
};

/// Everything the user must remember to decode an answer.
struct QuerySecret {
  Variant variant = Variant::MatrixS;
  std::uint64_t target = 0;            // 0-based file index
  std::optional<SecretState> s1, s2;   // Hhw: s1 only; follow-up queries: s2 only
  std::vector<Word> beta;              // Beta variant: m nonzero scalars
  std::optional<MatrixFq> mask_stack;  // MatrixS variant: (m*delta) x delta stack
};

/// The uploaded query: one block for Hhw, two for the CB variants.
struct Query {
  std::vector<MatrixFqs> blocks;  // each m*delta x n

  /// [Q1 | Q2] as a single matrix (wire form).
  MatrixFqs concat() const;
  static Query split(const MatrixFqs& wire, std::uint32_t n);
};

/// The stored file matrix: file j occupies columns [j*delta, (j+1)*delta).
struct Database {
  MatrixFq x;  // L x m*delta
  std::uint32_t delta = 0;

  std::uint64_t files() const { return x.cols() / delta; }
  MatrixFq file(std::uint64_t j) const;
};

Database random_database(const Params& p, Rng& rng);

SecretState secretively_sample(const Params& p, const ExtField& ext, Rng& rng);

struct BuiltQuery {
  Query query;
  QuerySecret secret;
};

BuiltQuery build_query(const Params& p, const ExtField& ext,
                       std::uint64_t index, Rng& rng);

/// Fresh second block reusing the mask of a prior query, for amortized
/// retrievals where the decoded R_1 is kept. Two-block variants only.
BuiltQuery build_followup_query(const Params& p, const ExtField& ext,
                                const QuerySecret& prior,
                                std::uint64_t new_index, Rng& rng);

/// A = X * [Q_1 | Q_2]. Stateless; `fq_muls` counts base-field
/// multiplications of the naive schedule when given.
MatrixFqs answer(const Database& db, const Query& q,
                 std::uint64_t* fq_muls = nullptr);

struct Recovered {
  MatrixFq file;
  MatrixFq r1;  // reusable first-block decode (equals `file` for Hhw)
};

Recovered recover_full(const MatrixFqs& a, const QuerySecret& qs,
                       const Params& p);
MatrixFq recover(const MatrixFqs& a, const QuerySecret& qs, const Params& p);

/// Decode a follow-up answer block against a cached R_1.
MatrixFq reuse_r1(const MatrixFq& r1_cached, const MatrixFqs& a2,
                  const QuerySecret& qs2, const Params& p);

}  // namespace cbcpir
