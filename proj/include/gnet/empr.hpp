#pragma once

#include <cmath>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnet/sequence.hpp"
#include "gnet/tensor.hpp"

namespace gnet {

// Additive decomposition of a 3-D array into outer products of
// lower-dimensional components and per-axis support vectors. The expansion
// has exactly eight terms:
//
//   G = g0 (s1 x s2 x s3)
//     + g1 x (s2 x s3) + (s1 x) g2 (x s3) + (s1 x s2) x g3
//     + g12 x s3 + g13 x s2 + g23 x s1
//     + g123
//
// Components are unique under the weighted vanishing conditions (each
// component contracts to zero against w.s along every one of its own axes),
// which also makes distinct terms mutually orthogonal under the weighted
// inner product.

struct WeightVectors {
    std::vector<double> w1, w2, w3;
};

struct SupportVectors {
    std::vector<double> s1, s2, s3;
};

struct OnewayComponents {
    std::vector<double> g1, g2, g3;
};

struct TwowayComponents {
    Matrix g12;  // n1 x n2
    Matrix g13;  // n1 x n3
    Matrix g23;  // n2 x n3
};

enum class EmprDepth { oneway, full };

struct EmprDecomposition {
    WeightVectors weights;
    SupportVectors supports;
    double g0 = 0.0;
    OnewayComponents oneway;
    std::optional<TwowayComponents> twoway;       // full depth only
    std::optional<Tensor3<double>> residual;      // g123, full depth only

    int n1() const { return static_cast<int>(weights.w1.size()); }
    int n2() const { return static_cast<int>(weights.w2.size()); }
    int n3() const { return static_cast<int>(weights.w3.size()); }
    bool is_full() const { return twoway.has_value() && residual.has_value(); }
};

// Uniform weights 1/n_r per axis; each vector sums to 1.
WeightVectors constant_weights(int n1, int n2, int n3);

namespace detail {

// A[i,k] = sum_j v_j G(i,j,k)
template <typename T>
Matrix contract_axis2(const Tensor3<T>& cube, const std::vector<double>& v) {
    Matrix out(static_cast<std::size_t>(cube.n1()),
               static_cast<std::size_t>(cube.n3()));
    for (int k = 0; k < cube.n3(); ++k) {
        const T* slice = cube.slice(k).data();
        for (int i = 0; i < cube.n1(); ++i) {
            const T* row = slice + static_cast<std::size_t>(i) * cube.n2();
            KahanSum acc;
            for (int j = 0; j < cube.n2(); ++j) {
                acc.add(v[static_cast<std::size_t>(j)] * static_cast<double>(row[j]));
            }
            out.at(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) =
                acc.value();
        }
    }
    return out;
}

// B[j,k] = sum_i v_i G(i,j,k)
template <typename T>
Matrix contract_axis1(const Tensor3<T>& cube, const std::vector<double>& v) {
    Matrix out(static_cast<std::size_t>(cube.n2()),
               static_cast<std::size_t>(cube.n3()));
    std::vector<double> acc(static_cast<std::size_t>(cube.n2()));
    std::vector<double> carry(static_cast<std::size_t>(cube.n2()));
    for (int k = 0; k < cube.n3(); ++k) {
        std::fill(acc.begin(), acc.end(), 0.0);
        std::fill(carry.begin(), carry.end(), 0.0);
        const T* slice = cube.slice(k).data();
        for (int i = 0; i < cube.n1(); ++i) {
            const double vi = v[static_cast<std::size_t>(i)];
            const T* row = slice + static_cast<std::size_t>(i) * cube.n2();
            for (int j = 0; j < cube.n2(); ++j) {
                const double x = vi * static_cast<double>(row[j]);
                const double y = x - carry[j];
                const double t = acc[j] + y;
                carry[j] = (t - acc[j]) - y;
                acc[j] = t;
            }
        }
        for (int j = 0; j < cube.n2(); ++j) {
            out.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = acc[j];
        }
    }
    return out;
}

// C[i,j] = sum_k v_k G(i,j,k)
template <typename T>
Matrix contract_axis3(const Tensor3<T>& cube, const std::vector<double>& v) {
    const std::size_t plane = static_cast<std::size_t>(cube.n1()) * cube.n2();
    Matrix out(static_cast<std::size_t>(cube.n1()),
               static_cast<std::size_t>(cube.n2()));
    std::vector<double> carry(plane, 0.0);
    for (int k = 0; k < cube.n3(); ++k) {
        const double vk = v[static_cast<std::size_t>(k)];
        const T* slice = cube.slice(k).data();
        for (std::size_t p = 0; p < plane; ++p) {
            const double x = vk * static_cast<double>(slice[p]);
            const double y = x - carry[p];
            const double t = out.values[p] + y;
            carry[p] = (t - out.values[p]) - y;
            out.values[p] = t;
        }
    }
    return out;
}

inline std::vector<double> hadamard(const std::vector<double>& a,
                                    const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

inline double kahan_dot(const std::vector<double>& a, const std::vector<double>& b) {
    KahanSum acc;
    for (std::size_t i = 0; i < a.size(); ++i) acc.add(a[i] * b[i]);
    return acc.value();
}

template <typename T>
void require_shape(const Tensor3<T>& cube, const WeightVectors& w) {
    if (w.w1.size() != static_cast<std::size_t>(cube.n1()) ||
        w.w2.size() != static_cast<std::size_t>(cube.n2()) ||
        w.w3.size() != static_cast<std::size_t>(cube.n3())) {
        throw std::invalid_argument("EMPR: weight lengths do not match cube shape");
    }
}

}  // namespace detail

// Averaged directional supports: S_r is the weighted mean of the cube over
// all axes except r, normalized so that sum_i w_i s_i^2 = 1. Sign of S is
// preserved. Throws when an axis average is identically zero.
template <typename T>
SupportVectors ads_supports(const Tensor3<T>& cube, const WeightVectors& w) {
    detail::require_shape(cube, w);
    const Matrix a = detail::contract_axis2(cube, w.w2);  // n1 x n3
    const Matrix b = detail::contract_axis1(cube, w.w1);  // n2 x n3

    SupportVectors s;
    s.s1.resize(w.w1.size());
    s.s2.resize(w.w2.size());
    s.s3.resize(w.w3.size());
    for (std::size_t i = 0; i < s.s1.size(); ++i) {
        KahanSum acc;
        for (std::size_t k = 0; k < w.w3.size(); ++k) acc.add(w.w3[k] * a.at(i, k));
        s.s1[i] = acc.value();
    }
    for (std::size_t j = 0; j < s.s2.size(); ++j) {
        KahanSum acc;
        for (std::size_t k = 0; k < w.w3.size(); ++k) acc.add(w.w3[k] * b.at(j, k));
        s.s2[j] = acc.value();
    }
    for (std::size_t k = 0; k < s.s3.size(); ++k) {
        KahanSum acc;
        for (std::size_t j = 0; j < w.w2.size(); ++j) acc.add(w.w2[j] * b.at(j, k));
        s.s3[k] = acc.value();
    }

    auto normalize = [](std::vector<double>& v, const std::vector<double>& weights,
                        int axis) {
        KahanSum sq;
        for (std::size_t i = 0; i < v.size(); ++i) sq.add(weights[i] * v[i] * v[i]);
        const double eta = std::sqrt(sq.value());
        if (eta == 0.0) {
            throw std::runtime_error(
                "ads_supports: cube vanishes under weighted averaging along axis " +
                std::to_string(axis));
        }
        for (double& x : v) x /= eta;
    };
    normalize(s.s1, w.w1, 1);
    normalize(s.s2, w.w2, 2);
    normalize(s.s3, w.w3, 3);
    return s;
}

// Weighted average of the cube against all three support directions.
template <typename T>
double zeroth_component(const Tensor3<T>& cube, const WeightVectors& w,
                        const SupportVectors& s) {
    detail::require_shape(cube, w);
    const Matrix a = detail::contract_axis2(cube, detail::hadamard(w.w2, s.s2));
    std::vector<double> t(w.w1.size());
    const auto ws3 = detail::hadamard(w.w3, s.s3);
    for (std::size_t i = 0; i < t.size(); ++i) {
        KahanSum acc;
        for (std::size_t k = 0; k < ws3.size(); ++k) acc.add(ws3[k] * a.at(i, k));
        t[i] = acc.value();
    }
    return detail::kahan_dot(detail::hadamard(w.w1, s.s1), t);
}

// One-way components: axis-pair weighted contraction minus g0 times the
// axis's own support. Each satisfies its vanishing condition.
template <typename T>
OnewayComponents oneway_components(const Tensor3<T>& cube, const WeightVectors& w,
                                   const SupportVectors& s, double g0) {
    detail::require_shape(cube, w);
    const auto ws1 = detail::hadamard(w.w1, s.s1);
    const auto ws2 = detail::hadamard(w.w2, s.s2);
    const auto ws3 = detail::hadamard(w.w3, s.s3);
    const Matrix a = detail::contract_axis2(cube, ws2);  // n1 x n3
    const Matrix b = detail::contract_axis1(cube, ws1);  // n2 x n3

    OnewayComponents g;
    g.g1.resize(w.w1.size());
    g.g2.resize(w.w2.size());
    g.g3.resize(w.w3.size());
    for (std::size_t i = 0; i < g.g1.size(); ++i) {
        KahanSum acc;
        for (std::size_t k = 0; k < ws3.size(); ++k) acc.add(ws3[k] * a.at(i, k));
        g.g1[i] = acc.value() - g0 * s.s1[i];
    }
    for (std::size_t j = 0; j < g.g2.size(); ++j) {
        KahanSum acc;
        for (std::size_t k = 0; k < ws3.size(); ++k) acc.add(ws3[k] * b.at(j, k));
        g.g2[j] = acc.value() - g0 * s.s2[j];
    }
    for (std::size_t k = 0; k < g.g3.size(); ++k) {
        KahanSum acc;
        for (std::size_t j = 0; j < ws2.size(); ++j) acc.add(ws2[j] * b.at(j, k));
        g.g3[k] = acc.value() - g0 * s.s3[k];
    }
    return g;
}

// Two-way components: single-axis weighted contraction minus all lower-order
// terms times the remaining supports. Reconstruction-depth only; features
// never use these.
template <typename T>
TwowayComponents twoway_components(const Tensor3<T>& cube, const WeightVectors& w,
                                   const SupportVectors& s, double g0,
                                   const OnewayComponents& g) {
    detail::require_shape(cube, w);
    const auto ws1 = detail::hadamard(w.w1, s.s1);
    const auto ws2 = detail::hadamard(w.w2, s.s2);
    const auto ws3 = detail::hadamard(w.w3, s.s3);

    TwowayComponents t;
    t.g12 = detail::contract_axis3(cube, ws3);
    for (std::size_t i = 0; i < w.w1.size(); ++i) {
        for (std::size_t j = 0; j < w.w2.size(); ++j) {
            t.g12.at(i, j) -= g.g1[i] * s.s2[j] + g.g2[j] * s.s1[i] +
                              g0 * s.s1[i] * s.s2[j];
        }
    }
    t.g13 = detail::contract_axis2(cube, ws2);
    for (std::size_t i = 0; i < w.w1.size(); ++i) {
        for (std::size_t k = 0; k < w.w3.size(); ++k) {
            t.g13.at(i, k) -= g.g1[i] * s.s3[k] + g.g3[k] * s.s1[i] +
                              g0 * s.s1[i] * s.s3[k];
        }
    }
    t.g23 = detail::contract_axis1(cube, ws1);
    for (std::size_t j = 0; j < w.w2.size(); ++j) {
        for (std::size_t k = 0; k < w.w3.size(); ++k) {
            t.g23.at(j, k) -= g.g2[j] * s.s3[k] + g.g3[k] * s.s2[j] +
                              g0 * s.s2[j] * s.s3[k];
        }
    }
    return t;
}

// g123 = G minus the seven lower outer-product terms; closes the finite sum.
template <typename T>
Tensor3<double> residual_component(const Tensor3<T>& cube, const SupportVectors& s,
                                   double g0, const OnewayComponents& g,
                                   const TwowayComponents& t) {
    Tensor3<double> r(cube.n1(), cube.n2(), cube.n3());
    for (int k = 0; k < cube.n3(); ++k) {
        for (int i = 0; i < cube.n1(); ++i) {
            for (int j = 0; j < cube.n2(); ++j) {
                const std::size_t si = static_cast<std::size_t>(i);
                const std::size_t sj = static_cast<std::size_t>(j);
                const std::size_t sk = static_cast<std::size_t>(k);
                r(i, j, k) =
                    static_cast<double>(cube(i, j, k)) -
                    g0 * s.s1[si] * s.s2[sj] * s.s3[sk] -
                    g.g1[si] * s.s2[sj] * s.s3[sk] -
                    g.g2[sj] * s.s1[si] * s.s3[sk] -
                    g.g3[sk] * s.s1[si] * s.s2[sj] -
                    t.g12.at(si, sj) * s.s3[sk] -
                    t.g13.at(si, sk) * s.s2[sj] -
                    t.g23.at(sj, sk) * s.s1[si];
            }
        }
    }
    return r;
}

// Constant weights + ADS supports + components, to the requested depth.
template <typename T>
EmprDecomposition decompose(const Tensor3<T>& cube,
                            EmprDepth depth = EmprDepth::oneway) {
    EmprDecomposition d;
    d.weights = constant_weights(cube.n1(), cube.n2(), cube.n3());
    d.supports = ads_supports(cube, d.weights);
    d.g0 = zeroth_component(cube, d.weights, d.supports);
    d.oneway = oneway_components(cube, d.weights, d.supports, d.g0);
    if (depth == EmprDepth::full) {
        d.twoway = twoway_components(cube, d.weights, d.supports, d.g0, d.oneway);
        d.residual = residual_component(cube, d.supports, d.g0, d.oneway, *d.twoway);
    }
    return d;
}

// Sum of all eight terms; requires a full-depth decomposition.
Tensor3<double> reconstruct(const EmprDecomposition& d);

// --- classification features ----------------------------------------------

// Concatenation [g1; g2; g3], length n1 + n2 + n3.
struct FeatureVector {
    std::string sample_id;
    std::optional<GroupLabel> label;
    std::vector<double> values;
};

FeatureVector feature_vector(const EmprDecomposition& d);
FeatureVector feature_vector(const EmprDecomposition& d, std::string sample_id,
                             std::optional<GroupLabel> label);

struct FeatureMatrix {
    int n1 = 0, n2 = 0, n3 = 0;
    std::vector<std::string> sample_ids;
    std::vector<GroupLabel> labels;
    Matrix values;  // one row per sample, n1+n2+n3 columns

    std::size_t count() const { return values.rows; }
    std::size_t dim() const { return values.cols; }
};

// CSV: header sample_id,label,g1_1..g1_n1,g2_1..g2_n2,g3_1..g3_n3; values
// round-trip exactly.
void write_feature_csv(const std::filesystem::path& path, const FeatureMatrix& m);
FeatureMatrix read_feature_csv(const std::filesystem::path& path);

}  // namespace gnet
