#include "truncon/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>

namespace truncon::detail {

namespace {

// Exact summation up to this length. FFT round-off is absolute (relative to
// the largest entry), and orbits of growing operators such as I + V amplify
// errors in their tiny early entries like e^{2 sqrt(n)}; direct sums keep
// every entry accurate relative to its own terms.
constexpr std::size_t kDirectCutoff = 4096;
constexpr std::size_t kSparseCutoff = 32;

// FFTW planning is not thread-safe; execution with the new-array interface is.
// FFTW_ESTIMATE keeps plans (and therefore results) deterministic, and
// FFTW_UNALIGNED lets plans run on std::vector storage of any alignment.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t length, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(length, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<Complex> in(length);
        std::vector<Complex> out(length);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(length),
                                          reinterpret_cast<fftw_complex*>(in.data()),
                                          reinterpret_cast<fftw_complex*>(out.data()), sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

std::vector<Complex> transform(std::vector<Complex> in, int sign) {
    std::vector<Complex> out(in.size());
    fftw_execute_dft(plan_cache().get(in.size(), sign), reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<Complex> padded_spectrum(std::span<const Complex> a) {
    std::vector<Complex> buf(2 * a.size());
    std::copy(a.begin(), a.end(), buf.begin());
    return transform(std::move(buf), FFTW_FORWARD);
}

std::vector<Complex> finish(std::vector<Complex> product, std::size_t n, std::size_t lead) {
    auto full = transform(std::move(product), FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(full.size());
    std::vector<Complex> out(n);
    for (std::size_t i = std::min(lead, n); i < n; ++i) out[i] = full[i] * inv;
    return out;
}

void require_same_length(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw InputError("convolution operands differ in length (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
    }
}

}  // namespace

std::size_t leading_index(std::span<const Complex> a) {
    auto it = std::find_if(a.begin(), a.end(), [](const Complex& c) { return c != Complex{}; });
    return static_cast<std::size_t>(it - a.begin());
}

std::size_t count_nonzero(std::span<const Complex> a) {
    return static_cast<std::size_t>(
        std::count_if(a.begin(), a.end(), [](const Complex& c) { return c != Complex{}; }));
}

std::vector<Complex> truncated_convolution_direct(std::span<const Complex> a,
                                                  std::span<const Complex> b) {
    require_same_length(a, b);
    const std::size_t n = a.size();
    // Split storage so the inner axpy loops vectorize; each output still sums
    // its terms in increasing m, so results do not depend on the vector width.
    std::vector<double> br(n), bi(n), outr(n, 0.0), outi(n, 0.0);
    bool b_real = true;
    for (std::size_t i = 0; i < n; ++i) {
        br[i] = b[i].real();
        bi[i] = b[i].imag();
        b_real = b_real && bi[i] == 0.0;
    }
    for (std::size_t m = 0; m < n; ++m) {
        const double ar = a[m].real();
        const double ai = a[m].imag();
        if (ar == 0.0 && ai == 0.0) continue;
        const std::size_t len = n - m;
        double* orp = outr.data() + m;
        double* oip = outi.data() + m;
        const double* brp = br.data();
        const double* bip = bi.data();
        if (b_real) {
            for (std::size_t j = 0; j < len; ++j) orp[j] += ar * brp[j];
            if (ai != 0.0) {
                for (std::size_t j = 0; j < len; ++j) oip[j] += ai * brp[j];
            }
        } else {
            for (std::size_t j = 0; j < len; ++j) {
                orp[j] += ar * brp[j] - ai * bip[j];
                oip[j] += ar * bip[j] + ai * brp[j];
            }
        }
    }
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {outr[i], outi[i]};
    return out;
}

std::vector<Complex> truncated_convolution_sparse(std::span<const Complex> sparse,
                                                  std::span<const Complex> dense) {
    require_same_length(sparse, dense);
    const std::size_t n = sparse.size();
    std::vector<Complex> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        const Complex w = sparse[m];
        if (w == Complex{}) continue;
        for (std::size_t i = m; i < n; ++i) out[i] += w * dense[i - m];
    }
    return out;
}

std::vector<Complex> truncated_convolution_fast(std::span<const Complex> a,
                                                std::span<const Complex> b) {
    require_same_length(a, b);
    const std::size_t n = a.size();
    const std::size_t lead = leading_index(a) + leading_index(b);
    if (lead >= n) return std::vector<Complex>(n);
    auto fa = padded_spectrum(a);
    const auto fb = padded_spectrum(b);
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
    return finish(std::move(fa), n, lead);
}

std::vector<Complex> truncated_convolution(std::span<const Complex> a,
                                           std::span<const Complex> b,
                                           ConvolutionMethod method) {
    switch (method) {
        case ConvolutionMethod::Direct: return truncated_convolution_direct(a, b);
        case ConvolutionMethod::Fast: return truncated_convolution_fast(a, b);
        case ConvolutionMethod::Automatic: break;
    }
    require_same_length(a, b);
    if (a.size() <= kDirectCutoff) return truncated_convolution_direct(a, b);
    const std::size_t na = count_nonzero(a);
    const std::size_t nb = count_nonzero(b);
    if (std::min(na, nb) <= kSparseCutoff) {
        return na <= nb ? truncated_convolution_sparse(a, b) : truncated_convolution_sparse(b, a);
    }
    return truncated_convolution_fast(a, b);
}

SpectralConvolver::SpectralConvolver(std::span<const Complex> a)
    : n_(a.size()),
      lead_(leading_index(a)),
      nonzeros_(count_nonzero(a)),
      a_(a.begin(), a.end()) {
    if (n_ > kDirectCutoff && nonzeros_ > kSparseCutoff) spectrum_ = padded_spectrum(a);
}

std::vector<Complex> SpectralConvolver::operator()(std::span<const Complex> b) const {
    require_same_length(a_, b);
    if (n_ <= kDirectCutoff) return truncated_convolution_direct(a_, b);
    if (nonzeros_ <= kSparseCutoff) return truncated_convolution_sparse(a_, b);
    const std::size_t lead = lead_ + leading_index(b);
    if (lead >= n_) return std::vector<Complex>(n_);
    auto fb = padded_spectrum(b);
    for (std::size_t i = 0; i < fb.size(); ++i) fb[i] *= spectrum_[i];
    return finish(std::move(fb), n_, lead);
}

}  // namespace truncon::detail
