#pragma once

#include <span>
#include <vector>

#include "weft/grid.hpp"
#include "weft/state.hpp"

namespace weft::detail {

/// In-place length-n DFT, out_k = sum_j exp(sign * 2 pi i jk/n) in_j.
/// sign is -1 or +1; n must be a power of two.
void fft_inplace(std::span<cplx> data, int sign);

/// Discrete Fourier sum between two dual lattices:
///   out_k = sum_j exp(sign * i * u_j * v_k / hbar) in_j
/// with u_j on `from` and v_k on `to`. Requires
/// from.size == to.size == in.size() and from.step * to.step * n = 2 pi hbar.
std::vector<cplx> lattice_dft(std::span<const cplx> in, const Axis &from, const Axis &to,
                              int sign, double hbar);

} // namespace weft::detail
