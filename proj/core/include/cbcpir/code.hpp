#pragma once

#include <cstdint>
#include <vector>

#include "cbcpir/matrix.hpp"
#include "cbcpir/rng.hpp"

namespace cbcpir {

class CodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random [n, k] linear code over F_{q^s}, held by a full-rank generator
/// matrix. No decoder beyond erasure decoding exists here; the minimum
/// distance is never computed.
struct LinearCode {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  MatrixFqs gen;  // k x n, rank k over F_{q^s}

  /// An (n-k) x n matrix H with gen * H^T = 0 (test oracle for membership).
  MatrixFqs parity_check() const;
};

/// Ordered k-subset I of the coordinates with gen[:, I] invertible; caches
/// the inverse so erasure decoding is a pair of products.
struct InformationSet {
  std::vector<std::uint32_t> indices;     // sorted, |I| = k
  std::vector<std::uint32_t> complement;  // sorted, |I_bar| = n - k
  MatrixFqs inv;                          // inverse of gen[:, I]
};

LinearCode sample_code(std::uint32_t n, std::uint32_t k, const ExtField& ext,
                       Rng& rng);

InformationSet sample_information_set(const LinearCode& c, Rng& rng);

/// rows x n matrix whose every row is a uniformly random codeword.
MatrixFqs sample_codeword_matrix(const LinearCode& c, std::size_t rows,
                                 Rng& rng);

struct ErasureDecoding {
  MatrixFqs code_part;  // rows lie in the code
  MatrixFqs err_part;   // supported off the information set
};

/// Split a = codewords + noise where the noise is supported on the
/// complement of I: code_part = a[:, I] * inv * gen, err_part = a - code_part.
ErasureDecoding erasure_decode(const MatrixFqs& a, const LinearCode& c,
                               const InformationSet& iset);

}  // namespace cbcpir
