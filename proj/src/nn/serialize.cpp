#include "nn/serialize.hpp"

#include <cmath>

namespace decoy::nn {

json mlp_to_json(const Mlp& net) {
    json layers = json::array();
    for(const Layer& l : net.layers) {
        layers.push_back(json{{"act", act_name(l.act)},
                              {"rows", l.W.rows},
                              {"cols", l.W.cols},
                              {"W", l.W.a},
                              {"b", l.b}});
    }
    return json{{"layers", layers}};
}

Mlp mlp_from_json(const json& j, const std::string& ctx) {
    Mlp net;
    json layers = field_as<json>(j, "layers", ctx);
    require(layers.is_array() && !layers.empty(), Errc::parse, ctx + ": layers must be a non-empty array");
    int prev_out = -1;
    for(std::size_t i = 0; i < layers.size(); ++i) {
        std::string lctx = ctx + ".layers[" + std::to_string(i) + "]";
        const json& lj = layers[i];
        Layer l;
        l.act = act_from_name(field_as<std::string>(lj, "act", lctx));
        int rows = field_as<int>(lj, "rows", lctx);
        int cols = field_as<int>(lj, "cols", lctx);
        require(rows > 0 && cols > 0, Errc::validation, lctx + ": non-positive layer shape");
        require(prev_out < 0 || cols == prev_out, Errc::validation,
                lctx + ": input width does not chain with the previous layer");
        l.W = Matrix(rows, cols);
        l.W.a = field_as<std::vector<double>>(lj, "W", lctx);
        l.b = field_as<std::vector<double>>(lj, "b", lctx);
        require(l.W.a.size() == std::size_t(rows) * cols, Errc::validation,
                lctx + ": weight array size does not match shape");
        require(l.b.size() == std::size_t(rows), Errc::validation,
                lctx + ": bias array size does not match shape");
        for(double v : l.W.a)
            require(std::isfinite(v), Errc::validation, lctx + ": non-finite weight");
        for(double v : l.b)
            require(std::isfinite(v), Errc::validation, lctx + ": non-finite bias");
        prev_out = rows;
        net.layers.push_back(std::move(l));
    }
    return net;
}

} // namespace decoy::nn
