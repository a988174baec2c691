#include "nn/adam.hpp"
#include "nn/losses.hpp"
#include "nn/mlp.hpp"
#include "nn/serialize.hpp"
#include "nn/train.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace decoy;
using namespace decoy::nn;

TEST_CASE("forward pass agrees with the loop-by-loop reference") {
    Rng rng(20260820);
    const struct {
        Act hidden;
        Act output;
    } combos[] = {
        {Act::Relu, Act::Identity},
        {Act::Sigmoid, Act::Identity},
        {Act::Relu, Act::Sigmoid},
    };
    for(const auto& combo : combos) {
        Mlp net = make_mlp({4, 8, 6, 3}, combo.hidden, combo.output, rng);
        for(int trial = 0; trial < 20; ++trial) {
            Vector x(4);
            for(auto& v : x)
                v = rng.uniform(-2, 2);
            Vector got = forward(net, x);
            Vector want = testoracle::mlp_forward(net, x);
            REQUIRE(got.size() == want.size());
            for(std::size_t i = 0; i < got.size(); ++i)
                CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("make_mlp shapes, init bounds, and determinism") {
    Rng rng(7);
    Mlp net = make_mlp({5, 11, 2}, Act::Relu, Act::Identity, rng);
    REQUIRE(net.layers.size() == 2);
    CHECK(net.in_dim() == 5);
    CHECK(net.out_dim() == 2);
    CHECK(net.layers[0].W.rows == 11);
    CHECK(net.layers[0].W.cols == 5);
    CHECK(net.layers[0].act == Act::Relu);
    CHECK(net.layers[1].act == Act::Identity);
    CHECK(net.param_count() == 11 * 5 + 11 + 2 * 11 + 2);

    for(const auto& layer : net.layers)
        for(double b : layer.b)
            CHECK(b == 0.0);

    // He-uniform bound for the relu layer, Xavier-uniform for the output
    double he = std::sqrt(6.0 / 5.0);
    double xavier = std::sqrt(6.0 / (11.0 + 2.0));
    double max0 = 0.0, max1 = 0.0;
    for(double w : net.layers[0].W.a)
        max0 = std::max(max0, std::abs(w));
    for(double w : net.layers[1].W.a)
        max1 = std::max(max1, std::abs(w));
    CHECK(max0 <= he);
    CHECK(max1 <= xavier);
    CHECK(max0 > 0.5 * he); // actually spread out, not collapsed near zero
    CHECK(max1 > 0.5 * xavier);

    Rng rng2(7);
    Mlp twin = make_mlp({5, 11, 2}, Act::Relu, Act::Identity, rng2);
    CHECK(twin.layers[0].W.a == net.layers[0].W.a);
    Rng rng3(8);
    Mlp other = make_mlp({5, 11, 2}, Act::Relu, Act::Identity, rng3);
    CHECK(other.layers[0].W.a != net.layers[0].W.a);

    CHECK_THROWS_AS(make_mlp({4}, Act::Relu, Act::Identity, rng), Error);
}

TEST_CASE("backward gradients pass a central-difference check") {
    Rng rng(20260821);
    Mlp net = make_mlp({3, 7, 5, 1}, Act::Relu, Act::Identity, rng);
    Vector x{0.3, -1.1, 0.7};

    MlpGrads grads(net);
    auto loss_once = [&](MlpGrads* out) {
        ForwardTrace trace;
        Vector y = forward(net, x, trace);
        double dlogit = 0.0;
        double loss = bce_with_logits(y[0], 1.0, dlogit);
        if(out)
            backward(net, trace, Vector{dlogit}, *out);
        return loss;
    };
    grads.zero();
    loss_once(&grads);

    auto result = grad_check(net.param_blocks(), grads.param_blocks(),
                             [&] { return loss_once(nullptr); });
    CHECK(result.max_rel_err < 1e-7);

    SUBCASE("backward returns dloss/dinput") {
        // check the input gradient numerically as well
        ForwardTrace trace;
        Vector y = forward(net, x, trace);
        double dlogit = 0.0;
        bce_with_logits(y[0], 1.0, dlogit);
        MlpGrads scratch(net);
        Vector dx = backward(net, trace, Vector{dlogit}, scratch);
        REQUIRE(dx.size() == x.size());
        for(std::size_t i = 0; i < x.size(); ++i) {
            double h = 1e-6, saved = x[i];
            x[i] = saved + h;
            double up = loss_once(nullptr);
            x[i] = saved - h;
            double dn = loss_once(nullptr);
            x[i] = saved;
            CHECK(dx[i] == doctest::Approx((up - dn) / (2 * h)).epsilon(1e-5));
        }
    }
}

TEST_CASE("loss values and gradients at pinned points") {
    SUBCASE("binary cross-entropy with logits") {
        double d = 0.0;
        CHECK(bce_with_logits(0.0, 1.0, d) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
        CHECK(d == doctest::Approx(-0.5).epsilon(1e-15));
        CHECK(bce_with_logits(2.0, 0.0, d) == doctest::Approx(2.1269280110429727).epsilon(1e-15));
        CHECK(d == doctest::Approx(0.8807970779778823).epsilon(1e-15));
        // saturated logits stay finite in the log1p form
        CHECK(bce_with_logits(500.0, 0.0, d) == doctest::Approx(500.0));
        CHECK(std::isfinite(bce_with_logits(-500.0, 1.0, d)));
        CHECK(bce_with_logits(-500.0, 1.0, d) == doctest::Approx(500.0));
    }
    SUBCASE("softmax cross-entropy") {
        Vector dl;
        Vector logits{0.0, 0.0, 0.0};
        CHECK(softmax_ce(logits, 1, dl) == doctest::Approx(1.0986122886681098).epsilon(1e-15));
        REQUIRE(dl.size() == 3);
        CHECK(dl[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
        CHECK(dl[1] == doctest::Approx(1.0 / 3 - 1.0).epsilon(1e-15));

        // invariant under a constant shift, stable at extreme logits
        Vector a{1.3, -0.2, 0.8}, b{11.3, 9.8, 10.8}, da, db;
        CHECK(softmax_ce(a, 2, da) == doctest::Approx(softmax_ce(b, 2, db)).epsilon(1e-12));
        Vector huge{1000.0, 0.0, -1000.0}, dh;
        CHECK(softmax_ce(huge, 0, dh) == doctest::Approx(0.0));
        CHECK_THROWS_AS(softmax_ce(huge, 3, dh), Error);
    }
    SUBCASE("squared error") {
        double d = 0.0;
        CHECK(squared_error(3.0, 1.0, d) == 4.0);
        CHECK(d == 4.0);
        CHECK(squared_error(1.0, 1.0, d) == 0.0);
        CHECK(d == 0.0);
    }
    SUBCASE("gaussian KL against the unit prior") {
        GaussianLatent q{{0.0, 0.0}, {0.0, 0.0}};
        CHECK(kl_gauss(q) == 0.0);

        q = {{1.0, 0.5}, {0.2, -0.3}};
        CHECK(kl_gauss(q) == doctest::Approx(0.6561104893065589).epsilon(1e-12));

        // gradient form accumulates on top of existing values
        Vector dmu{1.0, 1.0}, dlv{1.0, 1.0};
        double v = kl_gauss(q, 2.0, dmu, dlv);
        CHECK(v == doctest::Approx(2 * 0.6561104893065589).epsilon(1e-12));
        CHECK(dmu[0] == doctest::Approx(1.0 + 2.0 * 1.0).epsilon(1e-12));
        CHECK(dmu[1] == doctest::Approx(1.0 + 2.0 * 0.5).epsilon(1e-12));
        CHECK(dlv[0] == doctest::Approx(1.0 + std::exp(0.2) - 1.0).epsilon(1e-12));
        CHECK(dlv[1] == doctest::Approx(1.0 + std::exp(-0.3) - 1.0).epsilon(1e-12));
    }
    SUBCASE("reparameterization") {
        GaussianLatent q{{1.0, 2.0}, {0.0, std::log(4.0)}};
        Vector z = reparameterize(q, {0.5, -0.25});
        CHECK(z[0] == doctest::Approx(1.5).epsilon(1e-15));
        CHECK(z[1] == doctest::Approx(1.5).epsilon(1e-15));

        Vector dmu(2, 0.0), dlv(2, 0.0);
        reparameterize_backward(q, {0.5, -0.25}, {1.0, 1.0}, dmu, dlv);
        CHECK(dmu[0] == 1.0);
        CHECK(dmu[1] == 1.0);
        CHECK(dlv[0] == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(dlv[1] == doctest::Approx(-0.25).epsilon(1e-12));
    }
    SUBCASE("softmax and sigmoid") {
        Vector p = softmax({std::log(1.0), std::log(2.0), std::log(3.0)});
        CHECK(p[0] == doctest::Approx(1.0 / 6).epsilon(1e-12));
        CHECK(p[1] == doctest::Approx(2.0 / 6).epsilon(1e-12));
        CHECK(p[2] == doctest::Approx(3.0 / 6).epsilon(1e-12));
        CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));

        CHECK(sigmoid(0.0) == 0.5);
        CHECK(sigmoid(800.0) == 1.0);
        CHECK(sigmoid(-800.0) == 0.0);
        CHECK(std::isfinite(sigmoid(-800.0)));
    }
}

TEST_CASE("adam takes lr-sized first steps and converges on a quadratic") {
    SUBCASE("bias-corrected first step") {
        double w = 0.0, g = 1.0;
        Adam opt(0.1);
        std::vector<std::span<double>> params{{&w, 1}}, grads{{&g, 1}};
        opt.register_params(params);
        opt.step(params, grads);
        CHECK(w == doctest::Approx(-0.1).epsilon(1e-7));
        CHECK(opt.steps_taken() == 1);

        // scale invariance of the first step
        double w2 = 0.0, g2 = 1000.0;
        Adam opt2(0.1);
        std::vector<std::span<double>> p2{{&w2, 1}}, gr2{{&g2, 1}};
        opt2.register_params(p2);
        opt2.step(p2, gr2);
        CHECK(w2 == doctest::Approx(-0.1).epsilon(1e-7));
    }
    SUBCASE("minimizes (w - 3)^2") {
        double w = -4.0, g = 0.0;
        Adam opt(0.1);
        std::vector<std::span<double>> params{{&w, 1}}, grads{{&g, 1}};
        opt.register_params(params);
        for(int i = 0; i < 2000; ++i) {
            g = 2.0 * (w - 3.0);
            opt.step(params, grads);
        }
        CHECK(w == doctest::Approx(3.0).epsilon(1e-4));
    }
    SUBCASE("block shape mismatches are rejected") {
        double w[2] = {0, 0}, g = 0.0;
        Adam opt;
        std::vector<std::span<double>> params{{w, 2}};
        opt.register_params(params);
        std::vector<std::span<double>> bad{{&g, 1}};
        CHECK_THROWS_AS(opt.step(params, bad), Error);
        CHECK_THROWS_AS(opt.set_lr(-1.0), Error);
    }
}

TEST_CASE("training helpers") {
    SUBCASE("shuffled_indices is a seeded permutation") {
        Rng rng(123);
        auto idx = shuffled_indices(50, rng);
        REQUIRE(idx.size() == 50);
        auto sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> iota(50);
        std::iota(iota.begin(), iota.end(), 0);
        CHECK(sorted == iota);
        CHECK(idx != iota); // vanishingly unlikely to be identity

        Rng rng2(123);
        CHECK(shuffled_indices(50, rng2) == idx);
        CHECK(shuffled_indices(0, rng).empty());
    }
    SUBCASE("require_finite_loss") {
        require_finite_loss(1.5, "unit", 3); // fine
        try {
            require_finite_loss(std::nan(""), "dip-head", 17);
            FAIL("expected a model error");
        } catch(const Error& e) {
            CHECK(e.code() == Errc::model);
            CHECK(std::string(e.what()).find("dip-head") != std::string::npos);
            CHECK(std::string(e.what()).find("17") != std::string::npos);
        }
    }
    SUBCASE("grad_check flags a wrong gradient and accepts the right one") {
        double w = 0.7;
        double right = 3.0 * w * w; // d/dw of w^3
        double wrong = right + 0.5;
        std::vector<std::span<double>> params{{&w, 1}};
        auto loss = [&] { return w * w * w; };

        auto good = grad_check(params, {{&right, 1}}, loss);
        CHECK(good.max_rel_err < 1e-9);
        auto bad = grad_check(params, {{&wrong, 1}}, loss);
        CHECK(bad.max_rel_err > 0.1);
        CHECK(w == 0.7); // parameters restored in place
    }
}

TEST_CASE("checkpoint json round-trips the net bit for bit") {
    Rng rng(20260822);
    Mlp net = make_mlp({6, 9, 4}, Act::Sigmoid, Act::Identity, rng);
    json j = mlp_to_json(net);
    Mlp back = mlp_from_json(j, "unit");

    REQUIRE(back.layers.size() == net.layers.size());
    for(std::size_t i = 0; i < net.layers.size(); ++i) {
        CHECK(back.layers[i].act == net.layers[i].act);
        CHECK(back.layers[i].W.rows == net.layers[i].W.rows);
        CHECK(back.layers[i].W.cols == net.layers[i].W.cols);
        CHECK(back.layers[i].W.a == net.layers[i].W.a); // exact, not approximate
        CHECK(back.layers[i].b == net.layers[i].b);
    }

    Vector x{0.1, -0.2, 0.3, 0.4, -0.5, 0.6};
    CHECK(forward(back, x) == forward(net, x));

    SUBCASE("malformed checkpoints name their context") {
        json bad = mlp_to_json(net);
        bad["layers"][0]["act"] = "tanh";
        try {
            mlp_from_json(bad, "broken-net");
            FAIL("expected an error");
        } catch(const Error& e) {
            CHECK(std::string(e.what()).find("broken-net") != std::string::npos);
        }
        json empty;
        CHECK_THROWS_AS(mlp_from_json(empty, "ctx"), Error);
    }
}

TEST_CASE("param_blocks expose live storage") {
    Rng rng(5);
    Mlp net = make_mlp({2, 3, 1}, Act::Relu, Act::Identity, rng);
    Vector x{1.0, -1.0};
    Vector before = forward(net, x);

    auto blocks = net.param_blocks();
    REQUIRE(blocks.size() == 4); // W, b per layer
    std::size_t total = 0;
    for(const auto& blk : blocks)
        total += blk.size();
    CHECK(total == net.param_count());

    for(auto& v : blocks[0])
        v += 0.25;
    CHECK(forward(net, x) != before);
}
