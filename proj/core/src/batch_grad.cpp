#include "pinn/batch_grad.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "pinn/activation.hpp"
#include "pinn/errors.hpp"

namespace pinn {

namespace {

constexpr Eigen::Index kChunk = 256;

inline double pow_int(double u, int p) {
    double acc = u;
    for (int k = 1; k < p; ++k) acc *= u;
    return acc;
}

// entrywise activation pass: turns the pre-activation value lane into the
// post-activation one and fills the derivative lanes the reverse sweep needs
template <class F>
void activation_lanes(F derivs, Eigen::MatrixXd& val_inout, Eigen::MatrixXd& g1,
                      Eigen::MatrixXd& g2, Eigen::MatrixXd& g3) {
    const Eigen::Index n = val_inout.size();
    double* v = val_inout.data();
    double* d1 = g1.data();
    double* d2 = g2.data();
    double* d3 = g3.data();
    for (Eigen::Index k = 0; k < n; ++k) {
        ActDerivs d = derivs(v[k]);
        v[k] = d.g;
        d1[k] = d.g1;
        d2[k] = d.g2;
        d3[k] = d.g3;
    }
}

void activation_lanes_dispatch(Activation act, Eigen::MatrixXd& val, Eigen::MatrixXd& g1,
                               Eigen::MatrixXd& g2, Eigen::MatrixXd& g3) {
    switch (act) {
    case Activation::gelu: activation_lanes(gelu_derivs, val, g1, g2, g3); return;
    case Activation::tanh: activation_lanes(tanh_derivs, val, g1, g2, g3); return;
    case Activation::sigmoid: activation_lanes(sigmoid_derivs, val, g1, g2, g3); return;
    case Activation::relu: activation_lanes(relu_derivs, val, g1, g2, g3); return;
    }
    throw UsageError("unknown activation");
}

} // namespace

BatchLossGrad::BatchLossGrad(const ParabolicPde& pde, const Network& shape,
                             const SampleSet& samples, double alpha, double beta, double gamma,
                             int threads)
    : pde_(&pde), samples_(&samples), activation_(shape.activation),
      alpha_(alpha), beta_(beta), gamma_(gamma) {
    validate_shapes(shape);
    if (pde.eta)
        throw UsageError("training with a source-term callback is not supported (both "
                         "built-in problems have eta == 0)");
    if (samples.initial.empty() || samples.boundary.empty() || samples.collocation.empty())
        throw UsageError("training needs nonempty initial, boundary and collocation sets");

    sizes_ = shape.layer_sizes();
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
        w_offsets_.push_back(off);
        off += sizes_[l + 1] * sizes_[l];
        b_offsets_.push_back(off);
        off += sizes_[l + 1];
    }
    n_params_ = off;

    auto add_chunks = [this](Chunk::Kind kind, std::size_t count) {
        for (std::size_t begin = 0; begin < count; begin += kChunk)
            chunks_.push_back({kind, begin, std::min<std::size_t>(kChunk, count - begin)});
    };
    add_chunks(Chunk::Kind::initial, samples.initial.size());
    add_chunks(Chunk::Kind::boundary, samples.boundary.size());
    add_chunks(Chunk::Kind::collocation, samples.collocation.size());

    chunk_grads_.assign(chunks_.size(), Eigen::VectorXd(static_cast<Eigen::Index>(n_params_)));
    chunk_losses_.assign(chunks_.size(), 0.0);

    int hw = static_cast<int>(std::thread::hardware_concurrency());
    threads_ = threads > 0 ? threads : std::max(1, hw);
    threads_ = std::min<int>(threads_, static_cast<int>(chunks_.size()));

    workspaces_.resize(static_cast<std::size_t>(threads_));
    for (auto& ws : workspaces_) init_workspace(ws);
}

void BatchLossGrad::init_workspace(Workspace& ws) const {
    const std::size_t L = sizes_.size() - 1;
    ws.z.resize(L);
    ws.adj.resize(L);
    ws.ap.resize(L);
    ws.pre_tan.resize(L - 1);
    ws.gd.resize(L - 1);
    for (std::size_t l = 0; l < L; ++l) {
        const auto w_in = static_cast<Eigen::Index>(sizes_[l]);
        const auto w_out = static_cast<Eigen::Index>(sizes_[l + 1]);
        for (auto& m : ws.z[l]) m.setZero(w_in, kChunk);
        for (auto& m : ws.adj[l]) m.setZero(w_in, kChunk);
        for (auto& m : ws.ap[l]) m.setZero(w_out, kChunk);
        if (l + 1 < L) {
            for (auto& m : ws.pre_tan[l]) m.setZero(w_out, kChunk);
            for (auto& m : ws.gd[l]) m.setZero(w_out, kChunk);
        }
    }
    for (auto& m : ws.out) m.setZero(1, kChunk);
    // input tangent seed rows never change: z = (t, x)
    ws.z[0][1].row(0).setOnes();
    ws.z[0][2].row(1).setOnes();
}

void BatchLossGrad::run_chunk(const Chunk& chunk, Workspace& ws, const std::vector<WMap>& w,
                              const std::vector<BMap>& b, Eigen::VectorXd& grad_out,
                              double& loss_out) const {
    const std::size_t L = sizes_.size() - 1;
    const auto count = static_cast<Eigen::Index>(chunk.count);
    const bool collocation = chunk.kind == Chunk::Kind::collocation;

    // --- inputs, padded to kChunk with the first real point ----------------
    auto fill_inputs = [&](auto&& point_at) {
        for (Eigen::Index j = 0; j < kChunk; ++j) {
            auto [t, x] = point_at(chunk.begin + static_cast<std::size_t>(j < count ? j : 0));
            ws.z[0][0](0, j) = t;
            ws.z[0][0](1, j) = x;
        }
    };
    switch (chunk.kind) {
    case Chunk::Kind::initial:
        fill_inputs([&](std::size_t i) {
            return std::pair{samples_->initial[i].t, samples_->initial[i].x};
        });
        break;
    case Chunk::Kind::boundary:
        fill_inputs([&](std::size_t i) {
            return std::pair{samples_->boundary[i].t, samples_->boundary[i].x};
        });
        break;
    case Chunk::Kind::collocation:
        fill_inputs([&](std::size_t i) { return samples_->collocation[i]; });
        break;
    }

    // --- forward ------------------------------------------------------------
    for (std::size_t l = 0; l < L; ++l) {
        const bool hidden = l + 1 < L;
        auto& dst = hidden ? ws.z[l + 1] : ws.out;

        dst[0].noalias() = w[l] * ws.z[l][0];
        dst[0].colwise() += b[l];
        if (collocation) {
            if (hidden) {
                ws.pre_tan[l][0].noalias() = w[l] * ws.z[l][1];
                ws.pre_tan[l][1].noalias() = w[l] * ws.z[l][2];
                ws.pre_tan[l][2].noalias() = w[l] * ws.z[l][3];
            } else {
                dst[1].noalias() = w[l] * ws.z[l][1];
                dst[2].noalias() = w[l] * ws.z[l][2];
                dst[3].noalias() = w[l] * ws.z[l][3];
            }
        }

        if (hidden) {
            activation_lanes_dispatch(activation_, dst[0], ws.gd[l][0], ws.gd[l][1], ws.gd[l][2]);
            if (collocation) {
                // chain: z_t = g' P_t, z_x = g' P_x, z_q = g'' P_x^2 + g' P_q
                dst[1].array() = ws.gd[l][0].array() * ws.pre_tan[l][0].array();
                dst[2].array() = ws.gd[l][0].array() * ws.pre_tan[l][1].array();
                dst[3].array() = ws.gd[l][1].array() * ws.pre_tan[l][1].array().square() +
                                 ws.gd[l][0].array() * ws.pre_tan[l][2].array();
            }
        }
    }

    // --- loss and adjoint seeds (zero on padded columns) --------------------
    auto& seed = ws.ap[L - 1]; // output layer is linear, so dL/dP == dL/dOut
    double loss_sum = 0.0;
    if (collocation) {
        const double scale = 2.0 * gamma_ / static_cast<double>(samples_->collocation.size());
        const int p = pde_->p;
        for (Eigen::Index j = 0; j < kChunk; ++j) {
            if (j >= count) {
                seed[0](0, j) = seed[1](0, j) = seed[2](0, j) = seed[3](0, j) = 0.0;
                continue;
            }
            const double u = ws.out[0](0, j);
            const double ut = ws.out[1](0, j);
            const double uq = ws.out[3](0, j);
            const double upm1 = pow_int(u, p - 1);
            const double r = ut - pde_->m * uq - pde_->n * u - pde_->o * (upm1 * u);
            loss_sum += r * r;
            const double s = scale * r;
            seed[0](0, j) = s * (-pde_->n - pde_->o * static_cast<double>(p) * upm1);
            seed[1](0, j) = s;
            seed[2](0, j) = 0.0;
            seed[3](0, j) = -pde_->m * s;
        }
    } else {
        const bool init = chunk.kind == Chunk::Kind::initial;
        const auto& pts = init ? samples_->initial : samples_->boundary;
        const double scale = 2.0 * (init ? alpha_ : beta_) / static_cast<double>(pts.size());
        for (Eigen::Index j = 0; j < kChunk; ++j) {
            if (j >= count) {
                seed[0](0, j) = 0.0;
                continue;
            }
            const double d = ws.out[0](0, j) - pts[chunk.begin + static_cast<std::size_t>(j)].target;
            loss_sum += d * d;
            seed[0](0, j) = scale * d;
        }
    }
    loss_out = loss_sum;

    // --- reverse sweep; every dw/db block is assigned, no pre-zero needed ----
    for (std::size_t l = L; l-- > 0;) {
        const auto rows = static_cast<Eigen::Index>(sizes_[l + 1]);
        const auto cols = static_cast<Eigen::Index>(sizes_[l]);
        Eigen::Map<RowMajorMatrix> dw(grad_out.data() + w_offsets_[l], rows, cols);
        Eigen::Map<Eigen::VectorXd> db(grad_out.data() + b_offsets_[l], rows);
        dw.noalias() = ws.ap[l][0] * ws.z[l][0].transpose();
        db.noalias() = ws.ap[l][0].rowwise().sum();
        if (collocation)
            for (int c = 1; c < 4; ++c) dw.noalias() += ws.ap[l][c] * ws.z[l][c].transpose();

        if (l == 0) break;

        ws.adj[l][0].noalias() = w[l].transpose() * ws.ap[l][0];
        if (collocation)
            for (int c = 1; c < 4; ++c) ws.adj[l][c].noalias() = w[l].transpose() * ws.ap[l][c];

        // adjoint of the activation chain of transition l-1
        const auto& g1 = ws.gd[l - 1][0].array();
        if (collocation) {
            const auto& g2 = ws.gd[l - 1][1].array();
            const auto& g3 = ws.gd[l - 1][2].array();
            const auto& pt = ws.pre_tan[l - 1][0].array();
            const auto& px = ws.pre_tan[l - 1][1].array();
            const auto& pq = ws.pre_tan[l - 1][2].array();
            ws.ap[l - 1][0].array() = ws.adj[l][0].array() * g1 + ws.adj[l][1].array() * g2 * pt +
                                      ws.adj[l][2].array() * g2 * px +
                                      ws.adj[l][3].array() * (g3 * px.square() + g2 * pq);
            ws.ap[l - 1][1].array() = ws.adj[l][1].array() * g1;
            ws.ap[l - 1][2].array() =
                ws.adj[l][2].array() * g1 + 2.0 * ws.adj[l][3].array() * g2 * px;
            ws.ap[l - 1][3].array() = ws.adj[l][3].array() * g1;
        } else {
            ws.ap[l - 1][0].array() = ws.adj[l][0].array() * g1;
        }
    }
}

LossBreakdown BatchLossGrad::compute(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) {
    if (static_cast<std::size_t>(theta.size()) != n_params_)
        throw UsageError("BatchLossGrad: parameter vector size mismatch");

    std::vector<WMap> w;
    std::vector<BMap> b;
    const std::size_t L = sizes_.size() - 1;
    for (std::size_t l = 0; l < L; ++l) {
        w.emplace_back(theta.data() + w_offsets_[l], static_cast<Eigen::Index>(sizes_[l + 1]),
                       static_cast<Eigen::Index>(sizes_[l]));
        b.emplace_back(theta.data() + b_offsets_[l], static_cast<Eigen::Index>(sizes_[l + 1]));
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&](std::size_t worker_idx) {
        Workspace& ws = workspaces_[worker_idx];
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= chunks_.size()) break;
            run_chunk(chunks_[i], ws, w, b, chunk_grads_[i], chunk_losses_[i]);
        }
    };
    if (threads_ <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads_));
        for (int i = 0; i < threads_; ++i) pool.emplace_back(worker, static_cast<std::size_t>(i));
        for (auto& th : pool) th.join();
    }

    // fixed-order reduction keeps results bitwise identical for any thread count
    grad.setZero(static_cast<Eigen::Index>(n_params_));
    double init_sum = 0.0, bound_sum = 0.0, res_sum = 0.0;
    for (std::size_t i = 0; i < chunks_.size(); ++i) {
        grad += chunk_grads_[i];
        switch (chunks_[i].kind) {
        case Chunk::Kind::initial: init_sum += chunk_losses_[i]; break;
        case Chunk::Kind::boundary: bound_sum += chunk_losses_[i]; break;
        case Chunk::Kind::collocation: res_sum += chunk_losses_[i]; break;
        }
    }

    LossBreakdown lb;
    lb.init_loss = init_sum / static_cast<double>(samples_->initial.size());
    lb.bound_loss = bound_sum / static_cast<double>(samples_->boundary.size());
    lb.res_loss = res_sum / static_cast<double>(samples_->collocation.size());
    lb.total = alpha_ * lb.init_loss + beta_ * lb.bound_loss + gamma_ * lb.res_loss;
    return lb;
}

} // namespace pinn
