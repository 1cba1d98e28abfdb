#include "pinn/net.hpp"

#include <cmath>
#include <string>

#include "pinn/errors.hpp"
#include "pinn/rng.hpp"

namespace pinn {

namespace {

// Sub-stream tag for weight initialization draws.
constexpr std::uint64_t kInitStream = 0xa11;

// One forward pass over a generic scalar type. Both the plain and the
// jet-carrying evaluation funnel through here so the value lanes perform
// the identical sequence of operations (this file is built with
// -ffp-contract=off to keep that exact).
//
// P supplies parameters: P.w(l,i,j), P.b(l,i), P.lift(double).
template <class S, class P>
S forward_value_impl(const Network& net, const P& par, double t, double x) {
    std::vector<S> z;
    z.reserve(2);
    z.push_back(par.lift(t));
    z.push_back(par.lift(x));

    std::vector<S> next;
    const std::size_t layers = net.layer_count();
    for (std::size_t l = 0; l < layers; ++l) {
        const auto rows = static_cast<std::size_t>(net.weights[l].rows());
        next.clear();
        next.reserve(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            S acc = par.w(l, i, 0) * z[0];
            for (std::size_t j = 1; j < z.size(); ++j) acc = acc + par.w(l, i, j) * z[j];
            acc = acc + par.b(l, i);
            if (l + 1 < layers) {
                next.push_back(activation_coeffs(net.activation, acc).g);
            } else {
                next.push_back(acc);
            }
        }
        z.swap(next);
    }
    return z[0];
}

template <class S, class P>
ad::Jet<S> forward_jet_impl(const Network& net, const P& par, double t, double x) {
    using JetS = ad::Jet<S>;
    std::vector<JetS> z;
    z.reserve(2);
    z.push_back(JetS{par.lift(t), par.lift(1.0), par.lift(0.0), par.lift(0.0)});
    z.push_back(JetS{par.lift(x), par.lift(0.0), par.lift(1.0), par.lift(0.0)});

    std::vector<JetS> next;
    const std::size_t layers = net.layer_count();
    for (std::size_t l = 0; l < layers; ++l) {
        const auto rows = static_cast<std::size_t>(net.weights[l].rows());
        next.clear();
        next.reserve(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            // affine lanes accumulate in the same order as the scalar pass
            S v = par.w(l, i, 0) * z[0].val;
            S dt = par.w(l, i, 0) * z[0].dt;
            S dx = par.w(l, i, 0) * z[0].dx;
            S dxx = par.w(l, i, 0) * z[0].dxx;
            for (std::size_t j = 1; j < z.size(); ++j) {
                const S w = par.w(l, i, j);
                v = v + w * z[j].val;
                dt = dt + w * z[j].dt;
                dx = dx + w * z[j].dx;
                dxx = dxx + w * z[j].dxx;
            }
            v = v + par.b(l, i);
            JetS pre{v, dt, dx, dxx};
            if (l + 1 < layers) {
                auto c = activation_coeffs(net.activation, pre.val);
                next.push_back(ad::chain(pre, c.g, c.g1, c.g2));
            } else {
                next.push_back(pre);
            }
        }
        z.swap(next);
    }
    return z[0];
}

struct DoubleParams {
    const Network& net;
    double w(std::size_t l, std::size_t i, std::size_t j) const {
        return net.weights[l](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    double b(std::size_t l, std::size_t i) const {
        return net.biases[l](static_cast<Eigen::Index>(i));
    }
    double lift(double c) const { return c; }
};

struct VarParams {
    ad::Tape& tape;
    const Network& net;
    const std::vector<ad::Var>& theta;
    const std::vector<std::size_t>& offsets;
    ad::Var w(std::size_t l, std::size_t i, std::size_t j) const {
        const auto cols = static_cast<std::size_t>(net.weights[l].cols());
        return theta[offsets[l] + i * cols + j];
    }
    ad::Var b(std::size_t l, std::size_t i) const {
        const auto rows = static_cast<std::size_t>(net.weights[l].rows());
        const auto cols = static_cast<std::size_t>(net.weights[l].cols());
        return theta[offsets[l] + rows * cols + i];
    }
    ad::Var lift(double c) const { return tape.constant(c); }
};

} // namespace

std::vector<std::size_t> Network::layer_sizes() const {
    std::vector<std::size_t> sizes;
    if (weights.empty()) return sizes;
    sizes.push_back(static_cast<std::size_t>(weights.front().cols()));
    for (const auto& w : weights) sizes.push_back(static_cast<std::size_t>(w.rows()));
    return sizes;
}

std::size_t Network::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l < weights.size(); ++l)
        n += static_cast<std::size_t>(weights[l].size() + biases[l].size());
    return n;
}

Eigen::VectorXd Network::flatten() const {
    Eigen::VectorXd theta(static_cast<Eigen::Index>(parameter_count()));
    Eigen::Index k = 0;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        const auto& w = weights[l];
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j) theta[k++] = w(i, j);
        for (Eigen::Index i = 0; i < biases[l].size(); ++i) theta[k++] = biases[l][i];
    }
    return theta;
}

void Network::unflatten(const Eigen::VectorXd& theta) {
    if (static_cast<std::size_t>(theta.size()) != parameter_count())
        throw UsageError("unflatten: parameter vector has size " + std::to_string(theta.size()) +
                         ", network needs " + std::to_string(parameter_count()));
    Eigen::Index k = 0;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        auto& w = weights[l];
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = theta[k++];
        for (Eigen::Index i = 0; i < biases[l].size(); ++i) biases[l][i] = theta[k++];
    }
}

double Network::value(double t, double x) const {
    return forward_value_impl<double>(*this, DoubleParams{*this}, t, x);
}

Eigen::VectorXd Network::forward(const Eigen::VectorXd& z) const {
    if (z.size() != 2)
        throw UsageError("forward: input must have length 2 (t, x), got " +
                         std::to_string(z.size()));
    Eigen::VectorXd out(1);
    out[0] = value(z[0], z[1]);
    return out;
}

ad::Jet4 Network::forward_jet(double t, double x) const {
    ad::Jet4 out = forward_jet_impl<double>(*this, DoubleParams{*this}, t, x);
    if (!std::isfinite(out.val) || !std::isfinite(out.dt) || !std::isfinite(out.dx) ||
        !std::isfinite(out.dxx))
        throw NumericError("forward_jet: non-finite output");
    return out;
}

Network init_glorot(const std::vector<std::size_t>& layer_sizes, Activation activation,
                    std::uint64_t seed) {
    if (layer_sizes.size() < 2)
        throw ConfigError("layer_sizes needs at least input and output entries");
    if (layer_sizes.front() != 2)
        throw ConfigError("input layer must have width 2 (t, x)");
    if (layer_sizes.back() != 1) throw ConfigError("output layer must have width 1");
    for (std::size_t s : layer_sizes)
        if (s < 1) throw ConfigError("layer sizes must be >= 1");

    Network net;
    net.activation = activation;
    Rng rng = Rng(seed).derive(kInitStream);
    for (std::size_t l = 1; l < layer_sizes.size(); ++l) {
        const auto rows = static_cast<Eigen::Index>(layer_sizes[l]);
        const auto cols = static_cast<Eigen::Index>(layer_sizes[l - 1]);
        Eigen::MatrixXd w(rows, cols);
        const double limit = std::sqrt(6.0 / static_cast<double>(layer_sizes[l] + layer_sizes[l - 1]));
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) w(i, j) = rng.uniform(-limit, limit);
        net.weights.push_back(std::move(w));
        net.biases.push_back(Eigen::VectorXd::Zero(rows));
    }
    return net;
}

void validate_shapes(const Network& net) {
    if (net.weights.empty()) throw ConfigError("network has no layers");
    if (net.weights.size() != net.biases.size())
        throw ConfigError("network weight/bias layer counts differ");
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        if (net.biases[l].size() != net.weights[l].rows())
            throw ConfigError("bias length mismatch at layer " + std::to_string(l));
        if (l > 0 && net.weights[l].cols() != net.weights[l - 1].rows())
            throw ConfigError("adjacent layer shape mismatch at layer " + std::to_string(l));
        if (!net.weights[l].allFinite() || !net.biases[l].allFinite())
            throw ConfigError("non-finite parameter at layer " + std::to_string(l));
    }
    if (net.weights.front().cols() != 2) throw ConfigError("input width must be 2");
    if (net.weights.back().rows() != 1) throw ConfigError("output width must be 1");
}

TapeNet::TapeNet(ad::Tape& tape, const Network& net) : tape_(&tape), net_(&net) {
    validate_shapes(net);
    params_.reserve(net.parameter_count());
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        offsets_.push_back(params_.size());
        const auto& w = net.weights[l];
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j) params_.push_back(tape.leaf(w(i, j)));
        for (Eigen::Index i = 0; i < net.biases[l].size(); ++i)
            params_.push_back(tape.leaf(net.biases[l][i]));
    }
}

ad::Var TapeNet::value(double t, double x) const {
    return forward_value_impl<ad::Var>(*net_, VarParams{*tape_, *net_, params_, offsets_}, t, x);
}

ad::Jet<ad::Var> TapeNet::forward_jet(double t, double x) const {
    return forward_jet_impl<ad::Var>(*net_, VarParams{*tape_, *net_, params_, offsets_}, t, x);
}

} // namespace pinn
