#include "weft/detail/lattice_dft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "weft/errors.hpp"

namespace weft::detail {

namespace {

struct PlanDeleter {
    void operator()(fftw_plan_s *p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct BufferDeleter {
    void operator()(fftw_complex *p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex, BufferDeleter>;

Buffer make_buffer(std::size_t n) {
    return Buffer(static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n)));
}

// FFTW planning is not thread safe; execution with new arrays is. Plans are
// in-place, matching how fft_inplace executes them.
std::mutex plan_mutex;

fftw_plan cached_plan(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, Plan> cache;
    std::lock_guard lock(plan_mutex);
    auto &slot = cache[{n, sign}];
    if (!slot) {
        Buffer scratch = make_buffer(n);
        slot.reset(fftw_plan_dft_1d(static_cast<int>(n), scratch.get(), scratch.get(),
                                    sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE));
    }
    return slot.get();
}

} // namespace

void fft_inplace(std::span<cplx> data, int sign) {
    const std::size_t n = data.size();
    if (n == 0)
        return;
    fftw_plan plan = cached_plan(n, sign);
    Buffer buf = make_buffer(n);
    auto *raw = reinterpret_cast<cplx *>(buf.get());
    std::copy(data.begin(), data.end(), raw);
    fftw_execute_dft(plan, buf.get(), buf.get());
    std::copy(raw, raw + n, data.begin());
}

std::vector<cplx> lattice_dft(std::span<const cplx> in, const Axis &from, const Axis &to, int sign,
                              double hbar) {
    const std::size_t n = in.size();
    if (from.size != n || to.size != n)
        throw PreconditionError("lattice_dft: axis sizes do not match the input length");
    const double duality = from.step * to.step * static_cast<double>(n) / (two_pi * hbar);
    if (std::abs(duality - 1.0) > 1e-12)
        throw PreconditionError("lattice_dft: axes are not Fourier dual (du*dv*n != 2*pi*hbar)");

    // u_j v_k = u0 v0 + u0 k dv + v0 j du + 2 pi hbar jk / n
    const double s = sign < 0 ? -1.0 : 1.0;
    std::vector<cplx> work(n);
    for (std::size_t j = 0; j < n; ++j)
        work[j] = in[j] * std::polar(1.0, s * to.min * static_cast<double>(j) * from.step / hbar);
    fft_inplace(work, sign);
    for (std::size_t k = 0; k < n; ++k)
        work[k] *= std::polar(1.0, s * from.min * to.at(k) / hbar);
    return work;
}

} // namespace weft::detail
