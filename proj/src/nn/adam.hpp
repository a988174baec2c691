#pragma once

#include "nn/mlp.hpp"

namespace decoy::nn {

// Adaptive-moment gradient descent with bias correction. Parameter blocks are
// registered once; step() then expects gradient blocks in the same order and
// with the same sizes.
class Adam {
  public:
    explicit Adam(double lr = 1e-3, double beta1 = 0.9, double beta2 = 0.999,
                  double eps = 1e-8);

    void register_params(const std::vector<std::span<double>>& blocks);
    void step(const std::vector<std::span<double>>& params,
              const std::vector<std::span<double>>& grads);

    double lr() const { return m_lr; }
    void set_lr(double lr);
    long steps_taken() const { return m_t; }

  private:
    double m_lr, m_beta1, m_beta2, m_eps;
    long m_t = 0;
    std::vector<std::vector<double>> m_m, m_v;
};

} // namespace decoy::nn
