#include "kintwin/mlp.hpp"

#include "kintwin/errors.hpp"

namespace kintwin {

Mlp::Mlp(int input, const std::vector<int>& hidden, int output, Rng& rng, double output_scale) {
    int in = input;
    std::vector<int> outs = hidden;
    outs.push_back(output);
    for (size_t l = 0; l < outs.size(); ++l) {
        const int out = outs[l];
        const double limit = std::sqrt(6.0 / (in + out)) * (l + 1 == outs.size() ? output_scale : 1.0);
        MatX W(out, in);
        for (int r = 0; r < out; ++r)
            for (int c = 0; c < in; ++c) W(r, c) = rng.uniform(-limit, limit);
        weights.push_back(std::move(W));
        biases.push_back(VecX::Zero(out));
        in = out;
    }
}

MatX Mlp::forward(const MatX& x, Cache* cache) const {
    if (x.cols() != input_size()) throw DataError("mlp forward: input width mismatch");
    if (cache) {
        cache->input = x;
        cache->pre.clear();
        cache->post.clear();
    }
    MatX h = x;
    for (size_t l = 0; l + 1 < weights.size(); ++l) {
        MatX pre = h * weights[l].transpose();
        pre.rowwise() += biases[l].transpose();
        MatX post = pre.unaryExpr([](double v) { return swish(v); });
        if (cache) {
            cache->pre.push_back(pre);
            cache->post.push_back(post);
        }
        h = std::move(post);
    }
    MatX out = h * weights.back().transpose();
    out.rowwise() += biases.back().transpose();
    return out;
}

void Mlp::backward(const Cache& cache, const MatX& dout, Mlp& grads) const {
    const size_t L = weights.size();
    MatX delta = dout;  // dLoss/dPre for the current (linear output) layer
    for (size_t l = L; l-- > 0;) {
        const MatX& layer_in = l == 0 ? cache.input : cache.post[l - 1];
        grads.weights[l].noalias() += delta.transpose() * layer_in;
        grads.biases[l] += delta.colwise().sum().transpose();
        if (l == 0) break;
        MatX dh = delta * weights[l];
        // swish'(x) = s(x) * (1 + x * (1 - s(x)))
        const MatX& pre = cache.pre[l - 1];
        delta = dh.binaryExpr(pre, [](double g, double x) {
            const double s = 1.0 / (1.0 + std::exp(-x));
            return g * s * (1.0 + x * (1.0 - s));
        });
    }
}

Mlp Mlp::zeros_like() const {
    Mlp z;
    for (const MatX& W : weights) z.weights.push_back(MatX::Zero(W.rows(), W.cols()));
    for (const VecX& b : biases) z.biases.push_back(VecX::Zero(b.size()));
    return z;
}

int Mlp::num_params() const {
    int n = 0;
    for (const MatX& W : weights) n += static_cast<int>(W.size());
    for (const VecX& b : biases) n += static_cast<int>(b.size());
    return n;
}

void Mlp::add_scaled(const Mlp& other, double scale) {
    for (size_t l = 0; l < weights.size(); ++l) {
        weights[l] += scale * other.weights[l];
        biases[l] += scale * other.biases[l];
    }
}

void Mlp::flatten(double* out) const {
    int at = 0;
    for (const MatX& W : weights) {
        std::copy(W.data(), W.data() + W.size(), out + at);
        at += static_cast<int>(W.size());
    }
    for (const VecX& b : biases) {
        std::copy(b.data(), b.data() + b.size(), out + at);
        at += static_cast<int>(b.size());
    }
}

void Mlp::unflatten(const double* in) {
    int at = 0;
    for (MatX& W : weights) {
        std::copy(in + at, in + at + W.size(), W.data());
        at += static_cast<int>(W.size());
    }
    for (VecX& b : biases) {
        std::copy(in + at, in + at + b.size(), b.data());
        at += static_cast<int>(b.size());
    }
}

double Mlp::squared_norm() const {
    double n = 0.0;
    for (const MatX& W : weights) n += W.squaredNorm();
    for (const VecX& b : biases) n += b.squaredNorm();
    return n;
}

}  // namespace kintwin
