#include "nn/adam.hpp"

#include <cmath>

namespace decoy::nn {

Adam::Adam(double lr, double beta1, double beta2, double eps)
    : m_lr(lr), m_beta1(beta1), m_beta2(beta2), m_eps(eps) {
    require(lr >= 0.0, Errc::invalid_argument, "adam: negative learning rate");
    require(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0, Errc::invalid_argument,
            "adam: betas must lie in [0,1)");
}

void Adam::set_lr(double lr) {
    require(lr >= 0.0, Errc::invalid_argument, "adam: negative learning rate");
    m_lr = lr;
}

void Adam::register_params(const std::vector<std::span<double>>& blocks) {
    require(m_m.empty(), Errc::contract, "adam: parameters already registered");
    for(const auto& b : blocks) {
        m_m.emplace_back(b.size(), 0.0);
        m_v.emplace_back(b.size(), 0.0);
    }
}

void Adam::step(const std::vector<std::span<double>>& params,
                const std::vector<std::span<double>>& grads) {
    require(params.size() == m_m.size() && grads.size() == m_m.size(), Errc::contract,
            "adam: block count changed since registration");
    ++m_t;
    double c1 = 1.0 - std::pow(m_beta1, double(m_t));
    double c2 = 1.0 - std::pow(m_beta2, double(m_t));
    for(std::size_t bi = 0; bi < params.size(); ++bi) {
        auto p = params[bi];
        auto g = grads[bi];
        require(p.size() == m_m[bi].size() && g.size() == m_m[bi].size(), Errc::contract,
                "adam: block size changed since registration");
        auto& m = m_m[bi];
        auto& v = m_v[bi];
        for(std::size_t i = 0; i < p.size(); ++i) {
            m[i] = m_beta1 * m[i] + (1.0 - m_beta1) * g[i];
            v[i] = m_beta2 * v[i] + (1.0 - m_beta2) * g[i] * g[i];
            double mhat = m[i] / c1;
            double vhat = v[i] / c2;
            p[i] -= m_lr * mhat / (std::sqrt(vhat) + m_eps);
        }
    }
}

} // namespace decoy::nn
