#include "nn/train.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace decoy::nn {

std::vector<int> shuffled_indices(int n, Rng& rng) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    rng.shuffle(idx);
    return idx;
}

void require_finite_loss(double loss, const char* what, long step) {
    if(std::isfinite(loss))
        return;
    raise(Errc::model, std::string(what) + ": non-finite loss at step " + std::to_string(step) +
                           " (value " + std::to_string(loss) + ")");
}

GradCheckResult grad_check(const std::vector<std::span<double>>& params,
                           const std::vector<std::span<double>>& analytic,
                           const std::function<double()>& loss_fn, double h) {
    require(params.size() == analytic.size(), Errc::invalid_argument,
            "grad_check: block count mismatch");
    GradCheckResult res;
    for(std::size_t bi = 0; bi < params.size(); ++bi) {
        auto p = params[bi];
        auto a = analytic[bi];
        require(p.size() == a.size(), Errc::invalid_argument, "grad_check: block size mismatch");
        for(std::size_t i = 0; i < p.size(); ++i) {
            double keep = p[i];
            p[i] = keep + h;
            double up = loss_fn();
            p[i] = keep - h;
            double down = loss_fn();
            p[i] = keep;
            double numeric = (up - down) / (2.0 * h);
            double abs_err = std::abs(a[i] - numeric);
            double rel = abs_err / std::max(1.0, std::abs(a[i]) + std::abs(numeric));
            res.max_abs_err = std::max(res.max_abs_err, abs_err);
            res.max_rel_err = std::max(res.max_rel_err, rel);
        }
    }
    return res;
}

} // namespace decoy::nn
