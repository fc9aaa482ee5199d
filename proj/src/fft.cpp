#include "psdec/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace psdec::fft {
namespace {

// One cached in-place plan per (length, batch, stride, dist, sign).
struct PlanKey {
    int n, howmany, stride, dist, sign;
    auto operator<=>(const PlanKey&) const = default;
};

class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(const PlanKey& key) {
        std::lock_guard lock(mutex_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        // Plan on a scratch buffer; FFTW_UNALIGNED keeps the plan valid for
        // the caller's arrays via the new-array execute interface.
        const std::size_t total =
            static_cast<std::size_t>(key.dist) * (key.howmany - 1) +
            static_cast<std::size_t>(key.stride) * (key.n - 1) + 1;
        fftw_complex* buf = fftw_alloc_complex(total);
        if (!buf) throw std::bad_alloc();
        fftw_plan plan = fftw_plan_many_dft(
            1, &key.n, key.howmany, buf, nullptr, key.stride, key.dist, buf,
            nullptr, key.stride, key.dist,
            key.sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        if (!plan) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<PlanKey, fftw_plan> plans_;
};

void execute(Complex* data, const PlanKey& key) {
    fftw_plan plan = PlanCache::instance().get(key);
    fftw_complex* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
}

// Multiplies sample j by (-1)^j along the given axis; together with the
// overall (-1)^(n/2) this turns the raw DFT into the centered one.
void parity_rows(ComplexArray& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 1; j < a.cols(); j += 2) a(i, j) = -a(i, j);
}

void parity_cols(ComplexArray& a) {
    for (Eigen::Index i = 1; i < a.rows(); i += 2)
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
}

void require_even(Eigen::Index n) {
    if (n % 2 != 0) throw std::invalid_argument("centered transform requires even n");
}

}  // namespace

void transform_rows(ComplexArray& a, int sign) {
    if (a.size() == 0) return;
    execute(a.data(), PlanKey{static_cast<int>(a.cols()),
                              static_cast<int>(a.rows()), 1,
                              static_cast<int>(a.cols()), sign});
}

void transform_cols(ComplexArray& a, int sign) {
    if (a.size() == 0) return;
    execute(a.data(), PlanKey{static_cast<int>(a.rows()),
                              static_cast<int>(a.cols()),
                              static_cast<int>(a.cols()), 1, sign});
}

void transform_2d(ComplexArray& a, int sign) {
    transform_rows(a, sign);
    transform_cols(a, sign);
}

void transform_vector(Eigen::Ref<Eigen::VectorXcd> v, int sign) {
    if (v.size() == 0) return;
    execute(v.data(), PlanKey{static_cast<int>(v.size()), 1, 1, 1, sign});
}

void transform_matrix_cols(Eigen::MatrixXcd& m, int sign) {
    if (m.size() == 0) return;
    // Column-major: each column is contiguous.
    execute(m.data(), PlanKey{static_cast<int>(m.rows()),
                              static_cast<int>(m.cols()), 1,
                              static_cast<int>(m.rows()), sign});
}

double natural_frequency(int j, int n, double dx) {
    const double dw = 2.0 * std::numbers::pi / (n * dx);
    return (j < n / 2 ? j : j - n) * dw;
}

void centered_transform_rows(ComplexArray& a, int sign) {
    require_even(a.cols());
    parity_rows(a);
    transform_rows(a, sign);
    parity_rows(a);
    if ((a.cols() / 2) % 2 != 0) a = -a;
}

void centered_transform_cols(ComplexArray& a, int sign) {
    require_even(a.rows());
    parity_cols(a);
    transform_cols(a, sign);
    parity_cols(a);
    if ((a.rows() / 2) % 2 != 0) a = -a;
}

void centered_transform_2d(ComplexArray& a, int sign) {
    centered_transform_rows(a, sign);
    centered_transform_cols(a, sign);
}

}  // namespace psdec::fft
