#pragma once

#include <optional>
#include <vector>

#include "shrinkpath/risk.hpp"

namespace shrinkpath {

// The five TRACE series plus the likelihood-ratio curve, evaluated at every
// lattice point of a path. All series share the lattice length.
struct TraceBundle {
    ShrinkagePath path;
    RiskMode mode = RiskMode::ml;
    std::vector<Vector> coef;   // shrunken coefficients, beta coordinates
    std::vector<Vector> spat;   // shrinkage delta-factors
    std::vector<Vector> rmse;   // relative MSE diagonal
    std::vector<Vector> exev;   // excess eigenvalues, descending
    std::vector<std::optional<Vector>> infd;  // inferior direction cosines
    Vector lr;                  // -2 log likelihood ratio (+inf markers)

    double m_star() const { return path.m_star; }
    std::size_t size() const { return path.size(); }
};

/// Evaluate every diagnostic series over the path's lattice.
TraceBundle assemble_traces(const CanonicalForm& cf, const ShrinkagePath& path,
                            RiskMode mode = RiskMode::ml);

}  // namespace shrinkpath
