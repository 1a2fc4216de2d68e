#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fedsim/cka.hpp"
#include "fedsim/matrix.hpp"

namespace fedsim::nn {

enum class Activation { kRelu, kTanh, kIdentity };

Activation activation_from_string(const std::string& s);
std::string to_string(Activation a);

// Dense feed-forward net shape: [d_in, h_1, ..., h_{m-1}, n_classes].
// Everything up to the last weight layer is the representation component;
// the last layer maps representation -> logits with no activation.
struct Architecture {
    std::vector<std::size_t> layer_dims;
    Activation activation = Activation::kRelu;

    void validate() const;
    std::size_t input_dim() const { return layer_dims.front(); }
    std::size_t n_classes() const { return layer_dims.back(); }
    std::size_t weight_layers() const { return layer_dims.size() - 1; }
    // penultimate layer width; equals input_dim() for a single-weight-layer net
    std::size_t repr_dim() const { return layer_dims[layer_dims.size() - 2]; }

    bool operator==(const Architecture&) const = default;
};

struct LayerParams {
    Matrix weight;  // d_{l-1} x d_l
    Matrix bias;    // 1 x d_l

    bool operator==(const LayerParams&) const = default;
};

// Model weights; carries its activation tag so forward/backward are pure
// functions of (params, inputs).
struct ModelParams {
    std::vector<LayerParams> layers;
    Activation activation = Activation::kRelu;

    std::size_t input_dim() const { return layers.front().weight.rows; }
    std::size_t n_classes() const { return layers.back().weight.cols; }

    bool same_shape(const ModelParams& o) const;
    static ModelParams zeros_like(const ModelParams& p);

    bool operator==(const ModelParams&) const = default;
};

// Glorot-uniform weights (+/- sqrt(6/(fan_in+fan_out))), zero biases.
// Bit-deterministic in (arch, seed).
ModelParams init_params(const Architecture& arch, std::uint64_t seed);

struct ForwardResult {
    Matrix representation;        // B x repr_dim, post-activation
    Matrix logits;                // B x n_classes; empty for representation-only passes
    std::vector<Matrix> inputs;   // input to each applied weight layer (inputs[0] = X)
    std::vector<Matrix> preacts;  // pre-activation of each applied weight layer
};

ForwardResult forward(const ModelParams& params, const Matrix& x);
// Applies all but the last weight layer.
ForwardResult forward_representation(const ModelParams& params, const Matrix& x);

// Mean softmax cross-entropy over rows.
double task_loss(const Matrix& logits, const std::vector<int>& labels);

struct LossGrad {
    double loss = 0.0;
    double task_term = 0.0;
    double alignment_term = 0.0;  // eta * (1 - CKA); 0 when eta == 0
    double cka_value = 0.0;
    bool has_alignment = false;
    ModelParams grads;
};

// Composite local objective: task cross-entropy plus eta * (1 - CKA(K_i, K_target)),
// where K_i is the gram of the column-centered representation of rad_x under the
// current params. rad_x / k_target may be null when eta == 0. Gradients are exact
// analytic partials (median-mode RBF sigma is resolved per call and held constant).
LossGrad loss_and_grad(const ModelParams& params, const Matrix& batch_x,
                       const std::vector<int>& batch_y, const Matrix* rad_x,
                       const cka::KernelMatrix* k_target, double eta,
                       const cka::KernelSpec& kernel);

// v <- momentum * v + g;  w <- w - lr * v
void sgd_momentum_step(ModelParams& params, const ModelParams& grads,
                       ModelParams& velocity, double lr, double momentum);

}  // namespace fedsim::nn
