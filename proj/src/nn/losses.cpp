#include "nn/losses.hpp"

#include <algorithm>
#include <cmath>

namespace decoy::nn {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double bce_with_logits(double logit, double target, double& dlogit) {
    // max(z,0) - z*y + log(1 + exp(-|z|)) avoids overflow on either tail.
    double loss = std::max(logit, 0.0) - logit * target + std::log1p(std::exp(-std::abs(logit)));
    dlogit = sigmoid(logit) - target;
    return loss;
}

Vector softmax(const Vector& logits) {
    require(!logits.empty(), Errc::invalid_argument, "softmax: empty logits");
    double m = *std::max_element(logits.begin(), logits.end());
    Vector p(logits.size());
    double sum = 0.0;
    for(std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - m);
        sum += p[i];
    }
    for(double& v : p)
        v /= sum;
    return p;
}

double softmax_ce(const Vector& logits, int target, Vector& dlogits) {
    require(target >= 0 && target < int(logits.size()), Errc::invalid_argument,
            "softmax_ce: class index out of range");
    double m = *std::max_element(logits.begin(), logits.end());
    double lse = 0.0;
    for(double z : logits)
        lse += std::exp(z - m);
    lse = m + std::log(lse);
    dlogits.assign(logits.size(), 0.0);
    for(std::size_t i = 0; i < logits.size(); ++i)
        dlogits[i] = std::exp(logits[i] - lse);
    dlogits[target] -= 1.0;
    return lse - logits[target];
}

double squared_error(double pred, double target, double& dpred) {
    double e = pred - target;
    dpred = 2.0 * e;
    return e * e;
}

double kl_gauss(const GaussianLatent& q) {
    require(q.mu.size() == q.log_var.size(), Errc::invalid_argument,
            "kl_gauss: mu / log_var size mismatch");
    double acc = 0.0;
    for(std::size_t i = 0; i < q.mu.size(); ++i)
        acc += 1.0 + q.log_var[i] - q.mu[i] * q.mu[i] - std::exp(q.log_var[i]);
    return -0.5 * acc;
}

double kl_gauss(const GaussianLatent& q, double weight, Vector& dmu, Vector& dlog_var) {
    double v = kl_gauss(q);
    require(dmu.size() == q.mu.size() && dlog_var.size() == q.mu.size(), Errc::invalid_argument,
            "kl_gauss: gradient buffers sized wrong");
    for(std::size_t i = 0; i < q.mu.size(); ++i) {
        dmu[i] += weight * q.mu[i];
        dlog_var[i] += weight * 0.5 * (std::exp(q.log_var[i]) - 1.0);
    }
    return v;
}

Vector reparameterize(const GaussianLatent& q, const Vector& eps) {
    require(eps.size() == q.mu.size() && q.mu.size() == q.log_var.size(), Errc::invalid_argument,
            "reparameterize: dimension mismatch");
    Vector z(q.mu.size());
    for(std::size_t i = 0; i < z.size(); ++i)
        z[i] = q.mu[i] + std::exp(0.5 * q.log_var[i]) * eps[i];
    return z;
}

void reparameterize_backward(const GaussianLatent& q, const Vector& eps, const Vector& dz,
                             Vector& dmu, Vector& dlog_var) {
    require(dz.size() == q.mu.size() && dmu.size() == q.mu.size() &&
                dlog_var.size() == q.mu.size(),
            Errc::invalid_argument, "reparameterize_backward: dimension mismatch");
    for(std::size_t i = 0; i < dz.size(); ++i) {
        dmu[i] += dz[i];
        // d z / d log_var = eps * exp(log_var/2) / 2
        dlog_var[i] += dz[i] * eps[i] * 0.5 * std::exp(0.5 * q.log_var[i]);
    }
}

} // namespace decoy::nn
