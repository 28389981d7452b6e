#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballgreen {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Vector = VectorX<double>;

// Raised when the evaluation point coincides with the source (|x - z| below
// the coincidence radius). The Green's functions are genuinely singular there.
class source_coincidence_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Raised for a dipole sitting at the ball center: the image point is undefined.
class centered_source_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Domain ball: dimension n >= 1 and radius R > 0.
template <typename Scalar = double>
struct BallSpec {
    int dim = 1;
    Scalar radius = Scalar(1);

    BallSpec() = default;
    BallSpec(int n, Scalar r) : dim(n), radius(r) {
        if (n < 1) throw std::invalid_argument("BallSpec: dimension must be >= 1");
        using std::isfinite;
        if (!(r > Scalar(0)) || !isfinite(r)) throw std::invalid_argument("BallSpec: radius must be positive and finite");
    }
};

/// Point dipole: position z and moment D.
template <typename Scalar = double>
struct Dipole {
    VectorX<Scalar> position;
    VectorX<Scalar> moment;
};

enum class Method { closed_form, quadrature };

enum class EvalFlag : std::uint32_t {
    near_source_singularity = 1u << 0,
    collinear_fallback = 1u << 1,
    centered_source = 1u << 2,
};

/// Result of a Green's function evaluation. Flags report which conditioning
/// branch produced the value; they never indicate an error.
template <typename Scalar = double>
struct GreenEval {
    Scalar value = Scalar(0);
    Method method = Method::closed_form;
    std::uint32_t flags = 0;

    bool has(EvalFlag f) const { return (flags & static_cast<std::uint32_t>(f)) != 0; }
    void set(EvalFlag f) { flags |= static_cast<std::uint32_t>(f); }
};

inline const char* to_string(Method m) {
    return m == Method::closed_form ? "closed_form" : "quadrature";
}

inline const char* to_string(EvalFlag f) {
    switch (f) {
    case EvalFlag::near_source_singularity: return "near_source_singularity";
    case EvalFlag::collinear_fallback: return "collinear_fallback";
    case EvalFlag::centered_source: return "centered_source";
    }
    return "unknown";
}

inline std::vector<std::string> flag_names(std::uint32_t flags) {
    std::vector<std::string> out;
    for (auto f : {EvalFlag::near_source_singularity, EvalFlag::collinear_fallback, EvalFlag::centered_source})
        if (flags & static_cast<std::uint32_t>(f)) out.emplace_back(to_string(f));
    return out;
}

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& v, const char* what) {
    if (v.size() < 1) throw std::invalid_argument(std::string(what) + ": empty vector");
    if (!v.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite component");
}

template <typename A, typename B>
void require_same_dim(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, const char* what) {
    if (a.size() != b.size()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// Slack for points that should lie in the closed unit ball but were produced
// by normalization (|u/|u|| can exceed 1 by a few ulps).
template <typename Scalar>
Scalar ball_slack() {
    return Scalar(64) * Eigen::NumTraits<Scalar>::epsilon();
}

} // namespace detail

} // namespace ballgreen
