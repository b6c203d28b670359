#include "shrinkpath/traces.hpp"

#include <stdexcept>

namespace shrinkpath {

TraceBundle assemble_traces(const CanonicalForm& cf, const ShrinkagePath& path,
                            RiskMode mode) {
    if (path.p != cf.p) throw std::invalid_argument("assemble_traces: dimension mismatch");

    TraceBundle bundle;
    bundle.path = path;
    bundle.mode = mode;
    const std::size_t count = path.size();
    bundle.coef.reserve(count);
    bundle.spat.reserve(count);
    bundle.rmse.reserve(count);
    bundle.exev.reserve(count);
    bundle.infd.reserve(count);
    bundle.lr.reserve(count);

    for (std::size_t i = 0; i < count; ++i) {
        const Vector& delta = path.deltas[i];
        bundle.coef.push_back(coef_at_delta(cf, delta));
        bundle.spat.push_back(delta);
        bundle.rmse.push_back(relative_mse_diag(cf, delta, mode));
        ExcessEigen ee = excess_eigen(cf, delta, mode);
        bundle.exev.push_back(std::move(ee.eigenvalues));
        bundle.infd.push_back(std::move(ee.inferior_direction));
        bundle.lr.push_back(neg2_log_lr(cf, delta));
    }
    return bundle;
}

}  // namespace shrinkpath
