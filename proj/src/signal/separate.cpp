#include <string>

#include "subspace/error.hpp"
#include "subspace/signal.hpp"

namespace subspace::signal {

namespace {

void check_cut(const CutoffResult& cut, std::size_t count) {
    if (cut.m < 1 || cut.m > count) {
        throw Error(ErrorCode::range, "separate: m=" + std::to_string(cut.m) + " outside [1, " +
                                          std::to_string(count) + "]");
    }
    if (cut.f && (*cut.f <= cut.m || *cut.f > count)) {
        throw Error(ErrorCode::range, "separate: f=" + std::to_string(*cut.f) + " must lie in (m, " +
                                          std::to_string(count) + "]");
    }
}

}  // namespace

Separation separate(const linalg::SpectrumResult& spec, const CutoffResult& cut) {
    check_cut(cut, spec.singular_values.size());
    const std::size_t r = spec.numerical_rank;
    Separation out;
    out.dominant = linalg::band_sum(spec, 1, cut.m);
    if (cut.f) {
        out.weak = linalg::band_sum(spec, cut.m + 1, *cut.f);
        out.noise = linalg::band_sum(spec, *cut.f + 1, r);
    } else {
        out.weak = linalg::band_sum(spec, cut.m + 1, r);
        out.noise = Matrix(spec.rows(), spec.cols());
    }
    return out;
}

Separation separate(const linalg::GsvdResult& g, const CutoffResult& cut) {
    const std::size_t n = g.cols();
    check_cut(cut, n);
    Separation out;
    out.dominant = g.a_band(1, cut.m);
    if (cut.f) {
        out.weak = g.a_band(cut.m + 1, *cut.f);
        out.noise = g.a_band(*cut.f + 1, n);
    } else {
        out.weak = g.a_band(cut.m + 1, n);
        out.noise = Matrix(g.a_rows(), n);
    }
    return out;
}

}  // namespace subspace::signal
