#pragma once

#include "core/error.hpp"
#include "core/rng.hpp"

#include <span>
#include <string>
#include <vector>

namespace decoy::nn {

using Vector = std::vector<double>;

// Dense row-major matrix; rows index outputs, cols index inputs.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0.0) {}

    double& operator()(int r, int c) { return a[std::size_t(r) * cols + c]; }
    double operator()(int r, int c) const { return a[std::size_t(r) * cols + c]; }
};

enum class Act { Identity, Relu, Sigmoid };

const char* act_name(Act a);
Act act_from_name(const std::string& s);

struct Layer {
    Matrix W;
    Vector b;
    Act act = Act::Identity;
};

// Plain feedforward net: y = act(W x + b) composed over layers. All math is
// double precision; these nets are small enough that accuracy beats speed.
struct Mlp {
    std::vector<Layer> layers;

    int in_dim() const { return layers.empty() ? 0 : layers.front().W.cols; }
    int out_dim() const { return layers.empty() ? 0 : layers.back().W.rows; }

    // Mutable views over every parameter array, W then b per layer. Adam and
    // the checkpoint writer address parameters through this.
    std::vector<std::span<double>> param_blocks();
    std::vector<std::span<const double>> param_blocks() const;
    std::size_t param_count() const;
};

// Gradient store shaped like the net it belongs to.
struct MlpGrads {
    std::vector<Matrix> dW;
    std::vector<Vector> db;

    explicit MlpGrads(const Mlp& net);
    void zero();
    std::vector<std::span<double>> param_blocks();
};

// Per-layer forward records needed to run the backward pass.
struct ForwardTrace {
    std::vector<Vector> inputs; // input to each layer
    std::vector<Vector> pre;    // pre-activation of each layer
    Vector out;
};

Vector forward(const Mlp& net, const Vector& x);
Vector forward(const Mlp& net, const Vector& x, ForwardTrace& trace);

// Backpropagates dL/dout through the trace, accumulating parameter gradients
// into `grads` (caller zeroes between batches) and returning dL/dinput so
// stacked nets can chain.
Vector backward(const Mlp& net, const ForwardTrace& trace, Vector dout, MlpGrads& grads);

// Hidden layers use `hidden`, the last layer `output`. Weights start at
// He-uniform for relu layers and Xavier-uniform otherwise; biases at zero.
Mlp make_mlp(const std::vector<int>& dims, Act hidden, Act output, Rng& rng);

} // namespace decoy::nn
