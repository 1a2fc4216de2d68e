#include "fedsim/nn.hpp"

#include <cmath>

#include "fedsim/rng.hpp"

namespace fedsim::nn {

Activation activation_from_string(const std::string& s) {
    if (s == "relu") return Activation::kRelu;
    if (s == "tanh") return Activation::kTanh;
    if (s == "identity") return Activation::kIdentity;
    throw std::invalid_argument("unknown activation '" + s + "' (relu|tanh|identity)");
}

std::string to_string(Activation a) {
    switch (a) {
        case Activation::kRelu: return "relu";
        case Activation::kTanh: return "tanh";
        case Activation::kIdentity: return "identity";
    }
    return "?";
}

void Architecture::validate() const {
    if (layer_dims.size() < 2)
        throw std::invalid_argument("Architecture: need at least [d_in, n_classes]");
    for (std::size_t d : layer_dims)
        if (d == 0) throw std::invalid_argument("Architecture: zero layer width");
}

bool ModelParams::same_shape(const ModelParams& o) const {
    if (layers.size() != o.layers.size() || activation != o.activation) return false;
    for (std::size_t l = 0; l < layers.size(); ++l)
        if (!layers[l].weight.same_shape(o.layers[l].weight) ||
            !layers[l].bias.same_shape(o.layers[l].bias))
            return false;
    return true;
}

ModelParams ModelParams::zeros_like(const ModelParams& p) {
    ModelParams z;
    z.activation = p.activation;
    z.layers.reserve(p.layers.size());
    for (const auto& l : p.layers)
        z.layers.push_back({Matrix(l.weight.rows, l.weight.cols), Matrix(l.bias.rows, l.bias.cols)});
    return z;
}

ModelParams init_params(const Architecture& arch, std::uint64_t seed) {
    arch.validate();
    Rng rng(derive_seed(seed, stream::kInit));
    ModelParams p;
    p.activation = arch.activation;
    p.layers.reserve(arch.weight_layers());
    for (std::size_t l = 0; l + 1 < arch.layer_dims.size(); ++l) {
        const std::size_t fan_in = arch.layer_dims[l];
        const std::size_t fan_out = arch.layer_dims[l + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        Matrix w(fan_in, fan_out);
        for (auto& v : w.data) v = rng.next_uniform(-bound, bound);
        p.layers.push_back({std::move(w), Matrix(1, fan_out)});
    }
    return p;
}

namespace {

void apply_activation(Matrix& m, Activation a) {
    switch (a) {
        case Activation::kRelu:
            for (auto& v : m.data) v = v > 0.0 ? v : 0.0;
            break;
        case Activation::kTanh:
            for (auto& v : m.data) v = std::tanh(v);
            break;
        case Activation::kIdentity:
            break;
    }
}

// derivative from the post-activation value
double activation_deriv(double post, Activation a) {
    switch (a) {
        case Activation::kRelu: return post > 0.0 ? 1.0 : 0.0;
        case Activation::kTanh: return 1.0 - post * post;
        case Activation::kIdentity: return 1.0;
    }
    return 1.0;
}

Matrix affine(const Matrix& x, const LayerParams& lp) {
    Matrix z = matmul(x, lp.weight);
    for (std::size_t i = 0; i < z.rows; ++i)
        for (std::size_t j = 0; j < z.cols; ++j) z(i, j) += lp.bias(0, j);
    return z;
}

// Runs the first n_layers weight layers; when is_full, the last applied
// layer is the logits layer and gets no activation.
ForwardResult run_forward(const ModelParams& params, const Matrix& x,
                          std::size_t n_layers, bool is_full) {
    if (params.layers.empty()) throw std::invalid_argument("forward: empty model");
    if (x.rows < 1) throw std::invalid_argument("forward: batch must have at least 1 row");
    const std::size_t d_in = params.input_dim();
    if (x.cols != d_in)
        throw std::invalid_argument("forward: input has " + std::to_string(x.cols) +
                                    " cols, model expects " + std::to_string(d_in));

    ForwardResult r;
    r.inputs.reserve(n_layers);
    r.preacts.reserve(n_layers);
    Matrix a = x;
    for (std::size_t l = 0; l < n_layers; ++l) {
        r.inputs.push_back(a);
        Matrix z = affine(a, params.layers[l]);
        r.preacts.push_back(z);
        a = std::move(z);
        const bool logits_layer = is_full && l + 1 == n_layers;
        if (!logits_layer) apply_activation(a, params.activation);
    }
    if (is_full) {
        r.logits = std::move(a);
        r.representation = n_layers >= 2 ? r.inputs.back() : x;
    } else {
        r.representation = std::move(a);
    }
    return r;
}

}  // namespace

ForwardResult forward(const ModelParams& params, const Matrix& x) {
    return run_forward(params, x, params.layers.size(), true);
}

ForwardResult forward_representation(const ModelParams& params, const Matrix& x) {
    if (params.layers.size() < 2) {
        // representation of a single-weight-layer net is the input itself
        ForwardResult r;
        r.representation = x;
        return r;
    }
    return run_forward(params, x, params.layers.size() - 1, false);
}

double task_loss(const Matrix& logits, const std::vector<int>& labels) {
    if (labels.size() != logits.rows)
        throw std::invalid_argument("task_loss: " + std::to_string(labels.size()) +
                                    " labels for " + std::to_string(logits.rows) + " rows");
    const std::size_t c = logits.cols;
    double total = 0.0;
    for (std::size_t i = 0; i < logits.rows; ++i) {
        const int y = labels[i];
        if (y < 0 || static_cast<std::size_t>(y) >= c)
            throw std::invalid_argument("task_loss: label " + std::to_string(y) +
                                        " out of range [0," + std::to_string(c) + ")");
        double zmax = logits(i, 0);
        for (std::size_t j = 1; j < c; ++j) zmax = std::max(zmax, logits(i, j));
        double sum = 0.0;
        for (std::size_t j = 0; j < c; ++j) sum += std::exp(logits(i, j) - zmax);
        total += zmax + std::log(sum) - logits(i, static_cast<std::size_t>(y));
    }
    return total / static_cast<double>(logits.rows);
}

namespace {

// dL/dlogits for mean cross-entropy: (softmax - onehot) / B
Matrix softmax_ce_grad(const Matrix& logits, const std::vector<int>& labels) {
    Matrix g(logits.rows, logits.cols);
    const double invb = 1.0 / static_cast<double>(logits.rows);
    for (std::size_t i = 0; i < logits.rows; ++i) {
        double zmax = logits(i, 0);
        for (std::size_t j = 1; j < logits.cols; ++j) zmax = std::max(zmax, logits(i, j));
        double sum = 0.0;
        for (std::size_t j = 0; j < logits.cols; ++j) {
            g(i, j) = std::exp(logits(i, j) - zmax);
            sum += g(i, j);
        }
        for (std::size_t j = 0; j < logits.cols; ++j) g(i, j) /= sum;
        g(i, static_cast<std::size_t>(labels[i])) -= 1.0;
        for (std::size_t j = 0; j < logits.cols; ++j) g(i, j) *= invb;
    }
    return g;
}

// Chain a pre-activation gradient at layer `top` down to every weight/bias
// of layers 0..top, accumulating into grads.
void descend(const ForwardResult& fwd, Matrix dz, std::size_t top,
             const ModelParams& params, ModelParams& grads) {
    for (std::size_t l = top + 1; l-- > 0;) {
        add_scaled(grads.layers[l].weight, matmul_at_b(fwd.inputs[l], dz), 1.0);
        for (std::size_t j = 0; j < dz.cols; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < dz.rows; ++i) s += dz(i, j);
            grads.layers[l].bias(0, j) += s;
        }
        if (l == 0) break;
        Matrix da = matmul_a_bt(dz, params.layers[l].weight);
        // post-activation of layer l-1 is the cached input of layer l
        const Matrix& post = fwd.inputs[l];
        for (std::size_t i = 0; i < da.data.size(); ++i)
            da.data[i] *= activation_deriv(post.data[i], params.activation);
        dz = std::move(da);
    }
}

struct KernelGrad {
    double cka_value = 0.0;
    Matrix d_activation;  // dLoss/dA for the uncentered representation
};

// Gradient of eta*(1 - CKA(K_i, K_target)) w.r.t. the representation A of
// rad_x. K_i is built from the column-centered A; CKA is differentiated with
// K_i entries free, then chained through the kernel map and the centering.
KernelGrad alignment_grad(const Matrix& a, const cka::KernelMatrix& k_target,
                          double eta, const cka::KernelSpec& kernel) {
    if (a.rows != k_target.size())
        throw std::invalid_argument("loss_and_grad: K_target is " + shape_str(k_target.k) +
                                    " but RAD has " + std::to_string(a.rows) + " rows");
    const Matrix ac = cka::center_columns(a);
    const cka::KernelMatrix ki = cka::gram(ac, kernel);

    const std::size_t l = ki.size();
    const Matrix h = cka::centering_matrix(l);
    const Matrix ci = matmul(matmul(h, ki.k), h);       // H K_i H
    const Matrix m = matmul(matmul(h, k_target.k), h);  // H K_t H
    const double sxy = frob_dot(ki.k, m);
    const double sxx = frob_dot(ki.k, ci);
    const double syy = frob_dot(k_target.k, m);
    if (sxx <= 0.0 || syy <= 0.0)
        throw cka::DegenerateRepresentationError(
            "loss_and_grad: zero self-HSIC (constant representation rows)");
    const double denom = std::sqrt(sxx * syy);
    const double cka_value = sxy / denom;

    // d(-eta * CKA)/dK_i, entries free
    Matrix g(l, l);
    const double ratio = sxy / sxx;
    for (std::size_t i = 0; i < g.data.size(); ++i)
        g.data[i] = -eta * (m.data[i] - ratio * ci.data[i]) / denom;

    Matrix d_centered(a.rows, a.cols);
    if (kernel.kind == cka::KernelKind::kLinear) {
        d_centered = matmul(g, ac);
        for (auto& v : d_centered.data) v *= 2.0;
    } else {
        const double sigma = cka::resolve_rbf_sigma(ac, kernel);
        const double inv_s2 = 1.0 / (sigma * sigma);
        for (std::size_t p = 0; p < l; ++p)
            for (std::size_t q = 0; q < l; ++q) {
                if (p == q) continue;
                const double coef = 2.0 * g(p, q) * ki.k(p, q) * inv_s2;
                for (std::size_t j = 0; j < a.cols; ++j)
                    d_centered(p, j) += coef * (ac(q, j) - ac(p, j));
            }
    }
    // chain through column centering: dA = H * dA_centered
    return {cka_value, cka::center_columns(d_centered)};
}

}  // namespace

LossGrad loss_and_grad(const ModelParams& params, const Matrix& batch_x,
                       const std::vector<int>& batch_y, const Matrix* rad_x,
                       const cka::KernelMatrix* k_target, double eta,
                       const cka::KernelSpec& kernel) {
    if (eta < 0.0) throw std::invalid_argument("loss_and_grad: eta must be >= 0");

    LossGrad out;
    out.grads = ModelParams::zeros_like(params);

    const ForwardResult fwd = forward(params, batch_x);
    out.task_term = task_loss(fwd.logits, batch_y);
    descend(fwd, softmax_ce_grad(fwd.logits, batch_y), params.layers.size() - 1,
            params, out.grads);

    if (eta > 0.0) {
        if (rad_x == nullptr || k_target == nullptr)
            throw std::invalid_argument("loss_and_grad: eta > 0 requires rad_x and K_target");
        const ForwardResult rep = forward_representation(params, *rad_x);
        KernelGrad kg = alignment_grad(rep.representation, *k_target, eta, kernel);
        out.cka_value = kg.cka_value;
        out.has_alignment = true;
        out.alignment_term = eta * (1.0 - kg.cka_value);
        if (params.layers.size() >= 2) {
            // representation is the post-activation of layer m-2
            Matrix dz = std::move(kg.d_activation);
            const Matrix& post = rep.representation;
            for (std::size_t i = 0; i < dz.data.size(); ++i)
                dz.data[i] *= activation_deriv(post.data[i], params.activation);
            descend(rep, std::move(dz), params.layers.size() - 2, params, out.grads);
        }
        // single-weight-layer nets: representation is the raw input, no params involved
    }

    out.loss = out.task_term + out.alignment_term;
    if (!std::isfinite(out.loss)) throw std::runtime_error("loss_and_grad: non-finite loss");
    for (const auto& l : out.grads.layers) {
        require_finite(l.weight, "loss_and_grad: weight gradient");
        require_finite(l.bias, "loss_and_grad: bias gradient");
    }
    return out;
}

void sgd_momentum_step(ModelParams& params, const ModelParams& grads,
                       ModelParams& velocity, double lr, double momentum) {
    if (lr <= 0.0) throw std::invalid_argument("sgd_momentum_step: lr must be > 0");
    if (momentum < 0.0 || momentum >= 1.0)
        throw std::invalid_argument("sgd_momentum_step: momentum must be in [0,1)");
    if (!params.same_shape(grads) || !params.same_shape(velocity))
        throw std::invalid_argument("sgd_momentum_step: shape mismatch");
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        auto step = [&](Matrix& w, const Matrix& g, Matrix& v) {
            for (std::size_t i = 0; i < w.data.size(); ++i) {
                v.data[i] = momentum * v.data[i] + g.data[i];
                w.data[i] -= lr * v.data[i];
            }
        };
        step(params.layers[l].weight, grads.layers[l].weight, velocity.layers[l].weight);
        step(params.layers[l].bias, grads.layers[l].bias, velocity.layers[l].bias);
    }
}

}  // namespace fedsim::nn
