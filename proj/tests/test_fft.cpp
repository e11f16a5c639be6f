#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "wave/fft.hpp"

using namespace wave;

namespace {

// Direct O(n^2) DFT, the independent oracle for the fast transform.
cvec dft_naive(const std::vector<double>& x) {
    const size_t n = x.size();
    cvec out(n);
    for (size_t m = 0; m < n; ++m) {
        std::complex<double> acc(0.0, 0.0);
        for (size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * std::numbers::pi * double(j) * double(m) / double(n);
            acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[m] = acc;
    }
    return out;
}

std::vector<double> random_signal(size_t n, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) v = dist(gen);
    return x;
}

}  // namespace

TEST_SUITE("fft") {

TEST_CASE("matches the direct DFT on random data") {
    const auto x = random_signal(64, 12345);
    const cvec fast = fft_real(x);
    const cvec slow = dft_naive(x);
    for (size_t m = 0; m < x.size(); ++m) {
        CHECK(std::abs(fast[m] - slow[m]) < 1e-10);
    }
}

TEST_CASE("round trip returns the input") {
    const auto x = random_signal(1024, 999);
    const auto back = ifft_real(fft_real(x));
    double err = 0.0;
    for (size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(back[i] - x[i]));
    CHECK(err < 1e-12);
}

TEST_CASE("impulse transforms to a flat spectrum") {
    std::vector<double> x(32, 0.0);
    x[0] = 1.0;
    const cvec spec = fft_real(x);
    for (const auto& z : spec) {
        CHECK(std::abs(z - std::complex<double>(1.0, 0.0)) < 1e-14);
    }
}

TEST_CASE("single mode lands in the right bin") {
    const size_t n = 128;
    std::vector<double> x(n);
    for (size_t j = 0; j < n; ++j)
        x[j] = std::cos(2.0 * std::numbers::pi * 5.0 * double(j) / double(n));
    const cvec spec = fft_real(x);
    // cos splits into bins 5 and n-5 with weight n/2 each.
    CHECK(std::abs(spec[5] - std::complex<double>(64.0, 0.0)) < 1e-10);
    CHECK(std::abs(spec[n - 5] - std::complex<double>(64.0, 0.0)) < 1e-10);
    CHECK(std::abs(spec[4]) < 1e-10);
    CHECK(std::abs(spec[17]) < 1e-10);
}

TEST_CASE("non power of two length is rejected") {
    cvec a(48);
    CHECK_THROWS_AS(fft(a, false), std::invalid_argument);
}

TEST_CASE("transform is deterministic") {
    const auto x = random_signal(256, 7);
    const cvec a = fft_real(x);
    const cvec b = fft_real(x);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].real() == b[i].real());
        CHECK(a[i].imag() == b[i].imag());
    }
}

}  // TEST_SUITE
