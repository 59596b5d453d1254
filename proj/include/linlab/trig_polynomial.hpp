#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linlab/precision.hpp"

namespace linlab {

// A(x) = sum_K a_K e^{iKx} over positive Fourier modes kappa_0 < ... <
// kappa_N with nonzero complex coefficients.
class TrigPolynomial {
public:
    struct Mode {
        std::uint64_t k;
        Complex a;
    };

    explicit TrigPolynomial(std::vector<Mode> modes);

    // Mode grammar, comma-separated entries `K:re+imi` (rectangular, e.g.
    // `1:0+1i`) or `K:mod@arg` (polar, arg in radians, e.g. `5:1@2.07`).
    // Values are read at `bits` precision.
    static TrigPolynomial parse(const std::string& spec, unsigned bits);

    const std::vector<Mode>& modes() const { return modes_; }
    std::size_t size() const { return modes_.size(); }

    std::uint64_t kappa0() const { return modes_.front().k; }
    std::uint64_t kappa_top() const { return modes_.back().k; }

    // Mode index with the largest / smallest coefficient modulus.
    std::uint64_t kappa_max() const { return kappa_max_; }
    std::uint64_t kappa_min() const { return kappa_min_; }
    const Complex& coeff_at_kappa_max() const;
    const Complex& coeff_at_kappa_min() const;

    std::vector<std::uint64_t> mode_indices() const;
    std::string spec_string() const;

private:
    std::vector<Mode> modes_;
    std::uint64_t kappa_max_ = 0;
    std::uint64_t kappa_min_ = 0;
};

}  // namespace linlab
