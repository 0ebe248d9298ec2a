#include <doctest.h>

#include <cmath>
#include <random>

#include "neuroauth/errors.hpp"
#include "neuroauth/network.hpp"
#include "neuroauth/template.hpp"

using namespace neuroauth;

TEST_CASE("sigmoid hits the frozen reference points") {
    CHECK(sigmoid(0.0, 1.0) == 0.5);
    CHECK(sigmoid(0.5, 1.0) == doctest::Approx(0.6224593312018546).epsilon(1e-14));
    CHECK(sigmoid(-0.5, 1.0) == doctest::Approx(0.3775406687981454).epsilon(1e-14));
}

TEST_CASE("sigmoid symmetry S(x) + S(-x) = 1") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> x_dist(-20.0, 20.0);
    for (const double lambda : {1.0, 0.2, 3.5}) {
        for (int i = 0; i < 1000; ++i) {
            const double x = x_dist(gen);
            CHECK(std::fabs(sigmoid(x, lambda) + sigmoid(-x, lambda) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("sigmoid_prime closed form and lambda scaling") {
    CHECK(sigmoid_prime(0.5, 1.0) == 0.25);
    CHECK(sigmoid_prime(0.5, 2.0) == 0.5);
}

TEST_CASE("sigmoid_prime agrees with central finite differences") {
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> x_dist(-6.0, 6.0);
    const double h = 1e-6;
    for (const double lambda : {1.0, 0.2}) {
        for (int i = 0; i < 100; ++i) {
            const double x = x_dist(gen);
            const double numeric = (sigmoid(x + h, lambda) - sigmoid(x - h, lambda)) / (2 * h);
            const double analytic = sigmoid_prime(sigmoid(x, lambda), lambda);
            CHECK(std::fabs(numeric - analytic) < 1e-6);
        }
    }
}

TEST_CASE("init_weights is seed-deterministic, seed-sensitive and in range") {
    const Architecture arch{42, 13, 1.0};
    const WeightSet a = init_weights(arch, 7);
    const WeightSet b = init_weights(arch, 7);
    CHECK(a.w1 == b.w1);
    CHECK(a.b1 == b.b1);
    CHECK(a.w2 == b.w2);
    CHECK(a.b2 == b.b2);

    const WeightSet c = init_weights(arch, 8);
    CHECK(a.w1 != c.w1);

    // 42*13 + 13 + 13 + 1 = 573 values, all in [0,1].
    std::size_t counted = 0;
    const auto in_range = [&](double v) {
        ++counted;
        return v >= 0.0 && v <= 1.0;
    };
    bool all = in_range(a.b2);
    for (double v : a.w1) all = all && in_range(v);
    for (double v : a.b1) all = all && in_range(v);
    for (double v : a.w2) all = all && in_range(v);
    CHECK(all);
    CHECK(counted == 573);
}

TEST_CASE("forward with all-zero parameters yields 0.5 everywhere") {
    WeightSet w;
    w.input_count = 14;
    w.hidden_count = 4;
    w.w1.assign(14 * 4, 0.0);
    w.b1.assign(4, 0.0);
    w.w2.assign(4, 0.0);
    w.b2 = 0.0;

    const BitVector input(14, 1);
    const ActivationRecord act = forward(w, input, 1.0);
    for (double h : act.hidden_outputs)
        CHECK(h == 0.5);
    CHECK(act.final_output == 0.5);
}

TEST_CASE("forward matches the hand-evaluated single-node network") {
    WeightSet w;
    w.input_count = 1;
    w.hidden_count = 1;
    w.w1 = {1.0};
    w.b1 = {0.0};
    w.w2 = {1.0};
    w.b2 = 0.0;

    const ActivationRecord act = forward(w, BitVector{1}, 1.0);
    CHECK(act.hidden_outputs[0] == doctest::Approx(0.7310585786300049).epsilon(1e-14));
    CHECK(act.final_output == doctest::Approx(0.6750375273768237).epsilon(1e-14));
}

TEST_CASE("forward rejects mismatched input width") {
    const WeightSet w = init_weights(Architecture{42, 13, 1.0}, 1);
    try {
        forward(w, BitVector(28, 1), 1.0);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::dimension_mismatch);
    }
}

TEST_CASE("forward is pure: identical calls give bit-identical records") {
    const WeightSet w = init_weights(Architecture{42, 13, 1.0}, 99);
    BitVector input(42);
    std::mt19937_64 gen(5);
    for (auto& bit : input) bit = static_cast<std::uint8_t>(gen() & 1);

    const ActivationRecord first = forward(w, input, 1.0);
    const ActivationRecord second = forward(w, input, 1.0);
    CHECK(first.hidden_outputs == second.hidden_outputs);
    CHECK(first.final_output == second.final_output);

    for (double h : first.hidden_outputs) {
        CHECK(h > 0.0);
        CHECK(h < 1.0);
    }
    CHECK(first.final_output > 0.0);
    CHECK(first.final_output < 1.0);
}

TEST_CASE("flipping any single input bit moves the final output") {
    std::mt19937_64 gen(2026);
    double min_delta = 1.0;
    double max_delta = 0.0;
    std::size_t sets = 0;

    // Random weight sets across several widths.
    for (int round = 0; round < 97; ++round) {
        const std::size_t chars = 1 + (gen() % 6);
        const Architecture arch{7 * chars, hidden_count_for(7 * chars), 1.0};
        const WeightSet w = init_weights(arch, gen());
        BitVector input(arch.input_count);
        for (auto& bit : input) bit = static_cast<std::uint8_t>(gen() & 1);

        ++sets;
        const double base = forward(w, input, 1.0).final_output;
        for (std::size_t j = 0; j < input.size(); ++j) {
            BitVector flipped = input;
            flipped[j] ^= 1;
            const double delta = std::fabs(forward(w, flipped, 1.0).final_output - base);
            REQUIRE(delta > 0.0);
            min_delta = std::min(min_delta, delta);
            max_delta = std::max(max_delta, delta);
        }
    }

    // Trained weight sets behave the same way.
    for (const char* password : {"neural", "silk", "quartz"}) {
        TrainingConfig config;
        config.seed = 17;
        const Template tmpl = enroll(password, config);
        ++sets;
        const BitVector input = encode_password(password);
        const double base = tmpl.mapped_final;
        for (std::size_t j = 0; j < input.size(); ++j) {
            BitVector flipped = input;
            flipped[j] ^= 1;
            const double delta =
                std::fabs(forward(tmpl.weights, flipped, tmpl.architecture.lambda).final_output -
                          base);
            REQUIRE(delta > 0.0);
            min_delta = std::min(min_delta, delta);
            max_delta = std::max(max_delta, delta);
        }
    }

    CHECK(sets >= 99);
    MESSAGE("single-bit-flip |delta final_output| range: [", min_delta, ", ", max_delta, "]");
}
