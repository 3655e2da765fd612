#include "fnls/field.hpp"

#include <cmath>

#include "fnls/errors.hpp"
#include "fnls/fft.hpp"

namespace fnls {

ComplexField::ComplexField(GridPtr grid, Representation rep)
    : grid_(std::move(grid)), values_(grid_->size(), cplx(0.0)), rep_(rep) {}

ComplexField::ComplexField(GridPtr grid, std::vector<cplx> values, Representation rep)
    : grid_(std::move(grid)), values_(std::move(values)), rep_(rep) {
    if (values_.size() != grid_->size()) throw InvalidInput("field size does not match grid");
}

ComplexField& ComplexField::operator*=(cplx s) {
    for (auto& z : values_) z *= s;
    return *this;
}

ComplexField& ComplexField::operator+=(const ComplexField& o) {
    require_same_grid(*grid_, *o.grid_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& o) {
    require_same_grid(*grid_, *o.grid_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

bool ComplexField::all_finite() const {
    for (const auto& z : values_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexField operator*(cplx s, ComplexField f) {
    f *= s;
    return f;
}

ComplexField operator+(ComplexField a, const ComplexField& b) {
    a += b;
    return a;
}

ComplexField operator-(ComplexField a, const ComplexField& b) {
    a -= b;
    return a;
}

ComplexField to_spectral(const ComplexField& f) {
    if (!f.is_physical()) return f;
    ComplexField out(f.grid_ptr(), f.values(), Representation::Spectral);
    fft_forward(out.span(), out.grid());
    return out;
}

ComplexField to_physical(const ComplexField& f) {
    if (f.is_physical()) return f;
    ComplexField out(f.grid_ptr(), f.values(), Representation::Physical);
    fft_inverse(out.span(), out.grid());
    return out;
}

}  // namespace fnls
