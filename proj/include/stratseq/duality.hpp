#pragma once

#include "stratseq/error.hpp"
#include "stratseq/graded.hpp"

namespace stratseq {

/// Alexander duality for a closed hypersurface in an affine space of complex
/// dimension N: reduced cohomology of the complement from the Borel-Moore
/// homology of the hypersurface,
///   H^i(complement) = BM_{2N-1-i}(hypersurface) twisted by -N,
/// plus the degree-0 unit restoring unreduced cohomology.
inline GradedTateModule alexander(const GradedTateModule& bm_sigma, int N)
{
    GradedTateModule out = GradedTateModule::unit();
    for (const auto& [key, mult] : bm_sigma.entries()) {
        const auto [k, w] = key;
        if (k < 0 || k > 2 * N - 1)
            fail(ErrorKind::DegreeOutOfRange,
                 "Borel-Moore degree " + std::to_string(k) + " outside [0, 2N-1]");
        out = add(out, GradedTateModule({{2 * N - 1 - k, w - N, mult}}));
    }
    return out;
}

/// Poincare duality flip between cohomology and compactly supported
/// cohomology of a rationally smooth space of complex dimension d:
/// (k, w) -> (2d - k, -d - w). An involution.
inline GradedTateModule poincare_flip(const GradedTateModule& h, int d)
{
    GradedTateModule out;
    for (const auto& [key, mult] : h.entries()) {
        const auto [k, w] = key;
        if (k < 0 || k > 2 * d)
            fail(ErrorKind::DegreeOutOfRange,
                 "cohomological degree " + std::to_string(k) + " outside [0, 2d]");
        out = add(out, GradedTateModule({{2 * d - k, -d - w, mult}}));
    }
    return out;
}

} // namespace stratseq
