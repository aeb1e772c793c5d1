#ifndef FORMRING_SAMPLING_HPP
#define FORMRING_SAMPLING_HPP

#include <random>

#include "formring/form.hpp"

namespace formring {

/// Deterministic form generator for the trial suites (mt19937_64 is
/// specified bit-exactly, so runs reproduce across platforms).
class FormSampler {
public:
    explicit FormSampler(unsigned long seed) : rng_(seed) {}

    long pick(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng_);
    }

    BinaryForm form(int n, long height, int twist = -1) {
        std::vector<long> c(static_cast<std::size_t>(n) + 1);
        for (auto& v : c) v = pick(-height, height);
        return make_int_form(n, c, twist);
    }

    /// f_0 != 0.
    BinaryForm form_f0(int n, long height, int twist = -1) {
        BinaryForm f = form(n, height, twist);
        while (f.coeff(0).is_zero()) f.coeffs[0] = f.ring->from_int(pick(-height, height));
        return f;
    }

    /// f_0 != 0 and f_n != 0.
    BinaryForm form_ends(int n, long height, int twist = -1) {
        BinaryForm f = form_f0(n, height, twist);
        while (f.coeff(n).is_zero())
            f.coeffs[static_cast<std::size_t>(n)] = f.ring->from_int(pick(-height, height));
        return f;
    }

    BinaryForm primitive_form(int n, long height) {
        for (;;) {
            BinaryForm f = form(n, height);
            if (!f.is_zero() && is_primitive(f)) return f;
        }
    }

    BinaryForm imprimitive_form(int n, long height) {
        long d = pick(2, 5);
        BinaryForm f = form(n, height);
        while (f.is_zero()) f = form(n, height);
        Value dv = f.ring->from_int(d);
        for (auto& c : f.coeffs) c = c * dv;
        return f;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace formring

#endif
