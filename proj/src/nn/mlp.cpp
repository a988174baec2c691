#include "nn/mlp.hpp"

#include <cmath>

namespace decoy::nn {

const char* act_name(Act a) {
    switch(a) {
    case Act::Identity: return "identity";
    case Act::Relu: return "relu";
    case Act::Sigmoid: return "sigmoid";
    }
    raise(Errc::internal, "act_name: bad enum");
}

Act act_from_name(const std::string& s) {
    if(s == "identity")
        return Act::Identity;
    if(s == "relu")
        return Act::Relu;
    if(s == "sigmoid")
        return Act::Sigmoid;
    raise(Errc::parse, "unknown activation '" + s + "'");
}

namespace {

double apply_act(Act a, double z) {
    switch(a) {
    case Act::Identity: return z;
    case Act::Relu: return z > 0.0 ? z : 0.0;
    case Act::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
    }
    return z;
}

// Derivative in terms of the pre-activation z.
double act_grad(Act a, double z) {
    switch(a) {
    case Act::Identity: return 1.0;
    case Act::Relu: return z > 0.0 ? 1.0 : 0.0;
    case Act::Sigmoid: {
        double s = 1.0 / (1.0 + std::exp(-z));
        return s * (1.0 - s);
    }
    }
    return 1.0;
}

} // namespace

std::vector<std::span<double>> Mlp::param_blocks() {
    std::vector<std::span<double>> blocks;
    blocks.reserve(layers.size() * 2);
    for(Layer& l : layers) {
        blocks.emplace_back(l.W.a);
        blocks.emplace_back(l.b);
    }
    return blocks;
}

std::vector<std::span<const double>> Mlp::param_blocks() const {
    std::vector<std::span<const double>> blocks;
    blocks.reserve(layers.size() * 2);
    for(const Layer& l : layers) {
        blocks.emplace_back(l.W.a);
        blocks.emplace_back(l.b);
    }
    return blocks;
}

std::size_t Mlp::param_count() const {
    std::size_t n = 0;
    for(const Layer& l : layers)
        n += l.W.a.size() + l.b.size();
    return n;
}

MlpGrads::MlpGrads(const Mlp& net) {
    dW.reserve(net.layers.size());
    db.reserve(net.layers.size());
    for(const Layer& l : net.layers) {
        dW.emplace_back(l.W.rows, l.W.cols);
        db.emplace_back(l.b.size(), 0.0);
    }
}

void MlpGrads::zero() {
    for(Matrix& m : dW)
        std::fill(m.a.begin(), m.a.end(), 0.0);
    for(Vector& v : db)
        std::fill(v.begin(), v.end(), 0.0);
}

std::vector<std::span<double>> MlpGrads::param_blocks() {
    std::vector<std::span<double>> blocks;
    blocks.reserve(dW.size() * 2);
    for(std::size_t i = 0; i < dW.size(); ++i) {
        blocks.emplace_back(dW[i].a);
        blocks.emplace_back(db[i]);
    }
    return blocks;
}

static Vector layer_forward(const Layer& l, const Vector& x, Vector* pre) {
    Vector z(l.W.rows);
    for(int r = 0; r < l.W.rows; ++r) {
        double acc = l.b[r];
        const double* wr = &l.W.a[std::size_t(r) * l.W.cols];
        for(int c = 0; c < l.W.cols; ++c)
            acc += wr[c] * x[c];
        z[r] = acc;
    }
    if(pre)
        *pre = z;
    for(int r = 0; r < l.W.rows; ++r)
        z[r] = apply_act(l.act, z[r]);
    return z;
}

Vector forward(const Mlp& net, const Vector& x) {
    require(!net.layers.empty(), Errc::invalid_argument, "forward: empty net");
    require(int(x.size()) == net.in_dim(), Errc::invalid_argument,
            "forward: input dim " + std::to_string(x.size()) + ", net expects " +
                std::to_string(net.in_dim()));
    Vector h = x;
    for(const Layer& l : net.layers)
        h = layer_forward(l, h, nullptr);
    return h;
}

Vector forward(const Mlp& net, const Vector& x, ForwardTrace& trace) {
    require(!net.layers.empty(), Errc::invalid_argument, "forward: empty net");
    require(int(x.size()) == net.in_dim(), Errc::invalid_argument,
            "forward: input dim " + std::to_string(x.size()) + ", net expects " +
                std::to_string(net.in_dim()));
    trace.inputs.clear();
    trace.pre.clear();
    Vector h = x;
    for(const Layer& l : net.layers) {
        trace.inputs.push_back(h);
        Vector pre;
        h = layer_forward(l, h, &pre);
        trace.pre.push_back(std::move(pre));
    }
    trace.out = h;
    return trace.out;
}

Vector backward(const Mlp& net, const ForwardTrace& trace, Vector dout, MlpGrads& grads) {
    require(trace.inputs.size() == net.layers.size(), Errc::invalid_argument,
            "backward: trace does not belong to this net");
    require(dout.size() == std::size_t(net.out_dim()), Errc::invalid_argument,
            "backward: output grad dim mismatch");
    for(int li = int(net.layers.size()) - 1; li >= 0; --li) {
        const Layer& l = net.layers[li];
        const Vector& z = trace.pre[li];
        const Vector& x = trace.inputs[li];
        // dL/dz = dL/dy * act'(z)
        Vector dz(l.W.rows);
        for(int r = 0; r < l.W.rows; ++r)
            dz[r] = dout[r] * act_grad(l.act, z[r]);
        for(int r = 0; r < l.W.rows; ++r) {
            double* gw = &grads.dW[li].a[std::size_t(r) * l.W.cols];
            for(int c = 0; c < l.W.cols; ++c)
                gw[c] += dz[r] * x[c];
            grads.db[li][r] += dz[r];
        }
        Vector dx(l.W.cols, 0.0);
        for(int r = 0; r < l.W.rows; ++r) {
            const double* wr = &l.W.a[std::size_t(r) * l.W.cols];
            for(int c = 0; c < l.W.cols; ++c)
                dx[c] += wr[c] * dz[r];
        }
        dout = std::move(dx);
    }
    return dout;
}

Mlp make_mlp(const std::vector<int>& dims, Act hidden, Act output, Rng& rng) {
    require(dims.size() >= 2, Errc::invalid_argument, "make_mlp: need at least in and out dims");
    for(int d : dims)
        require(d > 0, Errc::invalid_argument, "make_mlp: non-positive layer dim");
    Mlp net;
    for(std::size_t i = 0; i + 1 < dims.size(); ++i) {
        Layer l;
        l.act = (i + 2 == dims.size()) ? output : hidden;
        l.W = Matrix(dims[i + 1], dims[i]);
        l.b.assign(dims[i + 1], 0.0);
        // He for rectifiers, Xavier otherwise; both uniform.
        double limit = l.act == Act::Relu ? std::sqrt(6.0 / dims[i])
                                          : std::sqrt(6.0 / (dims[i] + dims[i + 1]));
        for(double& w : l.W.a)
            w = rng.uniform(-limit, limit);
        net.layers.push_back(std::move(l));
    }
    return net;
}

} // namespace decoy::nn
