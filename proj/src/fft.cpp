#include "wave/fft.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace wave {

static bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

// Forward twiddles e^{-2 pi i j/len} for every stage of a size-n transform,
// concatenated stage by stage (len = 2, 4, ..., n). Cached per thread, so
// repeated transforms of the same size skip the trig entirely and every
// butterfly uses a table value computed directly by std::polar (no
// incremental-rotation roundoff).
const cvec& twiddle_table(size_t n) {
    thread_local std::map<size_t, cvec> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    cvec table;
    table.reserve(n);
    for (size_t len = 2; len <= n; len <<= 1)
        for (size_t j = 0; j < len / 2; ++j)
            table.push_back(
                std::polar(1.0, -2.0 * std::numbers::pi * double(j) / double(len)));
    return cache.emplace(n, std::move(table)).first->second;
}

}  // namespace

void fft(cvec& a, bool inverse) {
    const size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
    if (n == 1) return;

    // Bit-reversal permutation.
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const cvec& table = twiddle_table(n);
    size_t offset = 0;
    for (size_t len = 2; len <= n; len <<= 1) {
        const size_t half = len / 2;
        for (size_t i = 0; i < n; i += len) {
            for (size_t j = 0; j < half; ++j) {
                const std::complex<double> w =
                    inverse ? std::conj(table[offset + j]) : table[offset + j];
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + half] * w;
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
        offset += half;
    }
    if (inverse) {
        const double inv_n = 1.0 / double(n);
        for (auto& z : a) z *= inv_n;
    }
}

cvec fft_real(const std::vector<double>& x) {
    cvec a(x.size());
    for (size_t i = 0; i < x.size(); ++i) a[i] = x[i];
    fft(a, false);
    return a;
}

std::vector<double> ifft_real(cvec spectrum) {
    fft(spectrum, true);
    std::vector<double> out(spectrum.size());
    for (size_t i = 0; i < spectrum.size(); ++i) out[i] = spectrum[i].real();
    return out;
}

}  // namespace wave
