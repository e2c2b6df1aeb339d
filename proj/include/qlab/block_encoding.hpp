#pragma once

#include <cstdint>

#include "qlab/chebyshev.hpp"
#include "qlab/linalg.hpp"

namespace qlab {

// (alpha, a, err)-block-encoding: alpha (<0|^a ox I) U (|0>^a ox I) is within
// err (operator norm) of the encoded operator. Ancilla qubits are the most
// significant, so the encoded block is the top-left corner of U.
struct BlockEncoding {
  Matrix unitary;
  double alpha = 1.0;
  int ancillas = 0;
  double err = 0.0;
  int system_qubits = 0;
  std::uint64_t ledger_cost = 0;  // oracle queries charged per single use
};

// alpha * (<0|^a ox I) U (|0>^a ox I).
Matrix extract_block(const BlockEncoding& be);

// (1, n+a, 0)-block-encoding of rho on 2n+a qubits from a purification, via
// W = (U^dag ox I) SWAP(A, S') (U ox I); costs 2 oracle queries per use.
BlockEncoding density_block_encoding(const StatePrepOracle& oracle);

// Spectral QSVT reference backend: for a (1, a, 0)-encoding of Hermitian A
// and a definite-parity polynomial with |p| <= 1, returns a (1, a+1, 0)-
// encoding of p(A) built as [[p(A), S], [S, -p(A)]] with S = sqrt(I - p(A)^2),
// charging degree(p) uses of the inner encoding.
BlockEncoding qsvt_apply(const BlockEncoding& be, const ChebyshevPoly& poly);

// Unitary dilation of an arbitrary contraction (||A|| <= 1): a (1, 1, 0)-
// block-encoding built from the SVD of A.
BlockEncoding embed_contraction(const Matrix& a);

}  // namespace qlab
