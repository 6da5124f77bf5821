#pragma once

#include <vector>

#include "kintwin/math_utils.hpp"
#include "kintwin/rng.hpp"

namespace kintwin {

// Dense network with swish hidden activations and a linear output layer.
// Rows of the input matrix are samples. Gradients are computed by hand so the
// whole training loop stays dependency-free and bit-reproducible.
class Mlp {
public:
    Mlp() = default;
    // Glorot-uniform init; the output layer is scaled down by output_scale.
    Mlp(int input, const std::vector<int>& hidden, int output, Rng& rng,
        double output_scale = 1.0);

    struct Cache {
        MatX input;
        std::vector<MatX> pre;   // pre-activation per hidden layer
        std::vector<MatX> post;  // post-activation per hidden layer
    };

    MatX forward(const MatX& x, Cache* cache = nullptr) const;

    // dout is dLoss/dOutput; gradients accumulate into *grads (same shape as
    // this net, zero it first). Returns nothing: inputs are leaves here.
    void backward(const Cache& cache, const MatX& dout, Mlp& grads) const;

    Mlp zeros_like() const;
    int num_params() const;
    void add_scaled(const Mlp& other, double scale);  // this += scale * other
    void flatten(double* out) const;
    void unflatten(const double* in);
    double squared_norm() const;

    int input_size() const { return weights.empty() ? 0 : static_cast<int>(weights[0].cols()); }
    int output_size() const { return weights.empty() ? 0 : static_cast<int>(weights.back().rows()); }

    // weights[l] is (out x in); hidden layers then the output layer
    std::vector<MatX> weights;
    std::vector<VecX> biases;
};

inline double swish(double x) { return x / (1.0 + std::exp(-x)); }

}  // namespace kintwin
