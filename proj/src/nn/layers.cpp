// Copyright 2026 The qnnrobust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnnrobust/nn/layers.hpp"

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "qnnrobust/common/error.hpp"

namespace qnnrobust::nn {
namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<RowMat>;
using ConstMapMat = Eigen::Map<const RowMat>;

struct ConvGeometry {
    std::size_t n, c, h, w, f, k, stride, oh, ow;
    std::size_t patch() const { return c * k * k; }
    std::size_t positions() const { return oh * ow; }
};

ConvGeometry conv_geometry(const Tensor &x, const Tensor &w, std::size_t stride) {
    if (x.dims.size() != 4 || w.dims.size() != 4) {
        throw StructuralError("conv2d expects 4-d input and weights, got " + shape_string(x.dims) + " and " +
                              shape_string(w.dims));
    }
    const std::size_t k = w.dims[2];
    if (w.dims[3] != k || w.dims[1] != x.dims[1] || stride == 0) {
        throw StructuralError("conv2d weight " + shape_string(w.dims) + " does not fit input " +
                              shape_string(x.dims));
    }
    if (x.dims[2] < k || x.dims[3] < k) {
        throw StructuralError("conv2d input " + shape_string(x.dims) + " smaller than kernel");
    }
    return {x.dims[0], x.dims[1], x.dims[2], x.dims[3], w.dims[0], k, stride,
            (x.dims[2] - k) / stride + 1, (x.dims[3] - k) / stride + 1};
}

// cols [C*k*k, oh*ow] for one sample.
void im2col(const double *x, const ConvGeometry &g, double *cols) {
    const std::size_t p = g.positions();
    for (std::size_t ch = 0; ch < g.c; ++ch) {
        for (std::size_t ki = 0; ki < g.k; ++ki) {
            for (std::size_t kj = 0; kj < g.k; ++kj) {
                double *row = cols + ((ch * g.k + ki) * g.k + kj) * p;
                for (std::size_t oi = 0; oi < g.oh; ++oi) {
                    const double *src = x + (ch * g.h + oi * g.stride + ki) * g.w + kj;
                    for (std::size_t oj = 0; oj < g.ow; ++oj) row[oi * g.ow + oj] = src[oj * g.stride];
                }
            }
        }
    }
}

void col2im_add(const double *cols, const ConvGeometry &g, double *x) {
    const std::size_t p = g.positions();
    for (std::size_t ch = 0; ch < g.c; ++ch) {
        for (std::size_t ki = 0; ki < g.k; ++ki) {
            for (std::size_t kj = 0; kj < g.k; ++kj) {
                const double *row = cols + ((ch * g.k + ki) * g.k + kj) * p;
                for (std::size_t oi = 0; oi < g.oh; ++oi) {
                    double *dst = x + (ch * g.h + oi * g.stride + ki) * g.w + kj;
                    for (std::size_t oj = 0; oj < g.ow; ++oj) dst[oj * g.stride] += row[oi * g.ow + oj];
                }
            }
        }
    }
}

void require_same_dims(const Tensor &a, const Tensor &b, const char *what) {
    if (a.dims != b.dims) {
        throw StructuralError(std::string(what) + ": shape " + shape_string(a.dims) + " vs " +
                              shape_string(b.dims));
    }
}

} // namespace

Tensor conv2d_forward(const Tensor &x, const Tensor &w, const Tensor &b, std::size_t stride) {
    const auto g = conv_geometry(x, w, stride);
    if (b.numel() != g.f) throw StructuralError("conv2d bias size mismatch");
    Tensor y({g.n, g.f, g.oh, g.ow});
    std::vector<double> cols(g.patch() * g.positions());
    const ConstMapMat wm(w.data.data(), Eigen::Index(g.f), Eigen::Index(g.patch()));
    const Eigen::Map<const Eigen::VectorXd> bv(b.data.data(), Eigen::Index(g.f));
    for (std::size_t s = 0; s < g.n; ++s) {
        im2col(x.data.data() + s * g.c * g.h * g.w, g, cols.data());
        const ConstMapMat cm(cols.data(), Eigen::Index(g.patch()), Eigen::Index(g.positions()));
        MapMat ym(y.data.data() + s * g.f * g.positions(), Eigen::Index(g.f), Eigen::Index(g.positions()));
        ym.noalias() = wm * cm;
        ym.colwise() += bv;
    }
    return y;
}

Conv2dGrads conv2d_backward(const Tensor &x, const Tensor &w, const Tensor &dy, std::size_t stride,
                            bool need_dx) {
    const auto g = conv_geometry(x, w, stride);
    if (dy.dims != std::vector<std::size_t>{g.n, g.f, g.oh, g.ow}) {
        throw StructuralError("conv2d_backward: gradient shape " + shape_string(dy.dims));
    }
    Conv2dGrads out{need_dx ? Tensor(x.dims) : Tensor{}, Tensor(w.dims), Tensor({g.f})};
    std::vector<double> cols(g.patch() * g.positions()), dcols;
    if (need_dx) dcols.resize(cols.size());
    const ConstMapMat wm(w.data.data(), Eigen::Index(g.f), Eigen::Index(g.patch()));
    MapMat dwm(out.dw.data.data(), Eigen::Index(g.f), Eigen::Index(g.patch()));
    Eigen::Map<Eigen::VectorXd> dbv(out.db.data.data(), Eigen::Index(g.f));
    for (std::size_t s = 0; s < g.n; ++s) {
        im2col(x.data.data() + s * g.c * g.h * g.w, g, cols.data());
        const ConstMapMat cm(cols.data(), Eigen::Index(g.patch()), Eigen::Index(g.positions()));
        const ConstMapMat dym(dy.data.data() + s * g.f * g.positions(), Eigen::Index(g.f),
                              Eigen::Index(g.positions()));
        dwm.noalias() += dym * cm.transpose();
        dbv += dym.rowwise().sum();
        if (need_dx) {
            MapMat dcm(dcols.data(), Eigen::Index(g.patch()), Eigen::Index(g.positions()));
            dcm.noalias() = wm.transpose() * dym;
            col2im_add(dcols.data(), g, out.dx.data.data() + s * g.c * g.h * g.w);
        }
    }
    return out;
}

PoolResult maxpool_forward(const Tensor &x, std::size_t k, std::size_t stride) {
    if (x.dims.size() != 4 || x.dims[2] < k || x.dims[3] < k || k == 0 || stride == 0) {
        throw StructuralError("maxpool needs [N,C,H,W] with H, W >= " + std::to_string(k) + ", got " +
                              shape_string(x.dims));
    }
    const std::size_t nc = x.dims[0] * x.dims[1], h = x.dims[2], w = x.dims[3];
    const std::size_t oh = (h - k) / stride + 1, ow = (w - k) / stride + 1;
    PoolResult r{Tensor({x.dims[0], x.dims[1], oh, ow}), std::vector<std::size_t>(nc * oh * ow)};
    for (std::size_t p = 0; p < nc; ++p) {
        for (std::size_t i = 0; i < oh; ++i) {
            for (std::size_t j = 0; j < ow; ++j) {
                std::size_t best = (p * h + i * stride) * w + j * stride;
                for (std::size_t a = 0; a < k; ++a) {
                    for (std::size_t b = 0; b < k; ++b) {
                        const std::size_t idx = (p * h + i * stride + a) * w + j * stride + b;
                        if (x.data[idx] > x.data[best]) best = idx;
                    }
                }
                const std::size_t o = (p * oh + i) * ow + j;
                r.y.data[o] = x.data[best];
                r.argmax[o] = best;
            }
        }
    }
    return r;
}

Tensor maxpool_backward(const Tensor &dy, std::span<const std::size_t> argmax,
                        const std::vector<std::size_t> &x_dims) {
    if (argmax.size() != dy.numel()) throw StructuralError("maxpool_backward: argmax size mismatch");
    Tensor dx(x_dims);
    for (std::size_t o = 0; o < argmax.size(); ++o) dx.data.at(argmax[o]) += dy.data[o];
    return dx;
}

Tensor relu_forward(const Tensor &x) {
    Tensor y = x;
    for (auto &v : y.data) v = v > 0.0 ? v : 0.0;
    return y;
}

Tensor relu_backward(const Tensor &y, const Tensor &dy) {
    require_same_dims(y, dy, "relu_backward");
    Tensor dx = dy;
    for (std::size_t i = 0; i < dx.data.size(); ++i) {
        if (!(y.data[i] > 0.0)) dx.data[i] = 0.0;
    }
    return dx;
}

Tensor tanh_forward(const Tensor &x) {
    Tensor y = x;
    for (auto &v : y.data) v = std::tanh(v);
    return y;
}

Tensor tanh_backward(const Tensor &y, const Tensor &dy) {
    require_same_dims(y, dy, "tanh_backward");
    Tensor dx = dy;
    for (std::size_t i = 0; i < dx.data.size(); ++i) dx.data[i] *= 1.0 - y.data[i] * y.data[i];
    return dx;
}

Tensor dense_forward(const Tensor &x, const Tensor &w, const Tensor &b) {
    if (x.dims.size() != 2 || w.dims.size() != 2 || w.dims[1] != x.dims[1] || b.numel() != w.dims[0]) {
        throw StructuralError("dense: input " + shape_string(x.dims) + " vs weight " + shape_string(w.dims));
    }
    const auto n = Eigen::Index(x.dims[0]), in = Eigen::Index(x.dims[1]), out = Eigen::Index(w.dims[0]);
    Tensor y({x.dims[0], w.dims[0]});
    MapMat ym(y.data.data(), n, out);
    ym.noalias() = ConstMapMat(x.data.data(), n, in) * ConstMapMat(w.data.data(), out, in).transpose();
    ym.rowwise() += Eigen::Map<const Eigen::RowVectorXd>(b.data.data(), out);
    return y;
}

DenseGrads dense_backward(const Tensor &x, const Tensor &w, const Tensor &dy) {
    const auto n = Eigen::Index(x.dims.at(0)), in = Eigen::Index(x.dims.at(1)), out = Eigen::Index(w.dims.at(0));
    if (dy.dims != std::vector<std::size_t>{x.dims[0], w.dims[0]}) {
        throw StructuralError("dense_backward: gradient shape " + shape_string(dy.dims));
    }
    DenseGrads g{Tensor(x.dims), Tensor(w.dims), Tensor({w.dims[0]})};
    const ConstMapMat dym(dy.data.data(), n, out);
    MapMat(g.dx.data.data(), n, in).noalias() = dym * ConstMapMat(w.data.data(), out, in);
    MapMat(g.dw.data.data(), out, in).noalias() = dym.transpose() * ConstMapMat(x.data.data(), n, in);
    Eigen::Map<Eigen::RowVectorXd>(g.db.data.data(), out) = dym.colwise().sum();
    return g;
}

LossResult softmax_cross_entropy(const Tensor &logits, std::span<const int> labels) {
    if (logits.dims.size() != 2 || logits.dims[0] != labels.size() || labels.empty()) {
        throw StructuralError("cross-entropy: logits " + shape_string(logits.dims) + " for " +
                              std::to_string(labels.size()) + " labels");
    }
    const std::size_t n = logits.dims[0], k = logits.dims[1];
    LossResult r{0.0, Tensor(logits.dims)};
    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] < 0 || std::size_t(labels[i]) >= k) {
            throw ValidationError("label " + std::to_string(labels[i]) + " outside [0, " + std::to_string(k) + ")");
        }
        const double *z = logits.data.data() + i * k;
        std::size_t top = 0;
        for (std::size_t j = 1; j < k; ++j) {
            if (z[j] > z[top]) top = j;
        }
        // log-sum-exp as z_top + log1p(rest) keeps small losses exact.
        double rest = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (j != top) rest += std::exp(z[j] - z[top]);
        }
        r.loss += z[top] - z[labels[i]] + std::log1p(rest);
        double *d = r.dlogits.data.data() + i * k;
        for (std::size_t j = 0; j < k; ++j) d[j] = std::exp(z[j] - z[top]) / (1.0 + rest) / double(n);
        d[labels[i]] -= 1.0 / double(n);
    }
    r.loss /= double(n);
    return r;
}

} // namespace qnnrobust::nn
