// field.cpp

#include "gflow/field.hpp"

#include <cmath>
#include <stdexcept>

#include "gflow/kernels.hpp"

namespace gflow {

Field::Field(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->size(), fill) {}

Field::Field(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->size())
        throw std::invalid_argument("field length does not match grid size");
}

bool Field::is_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

void require_same_grid(const Field& a, const Field& b) {
    if (!a.grid().compatible(b.grid()))
        throw std::invalid_argument("fields live on different grids");
}

double inner_product(const Field& f, const Field& g) {
    require_same_grid(f, g);
    return kernels::dot(f.data(), g.data(), f.size()) * f.grid().cell();
}

double l2_norm(const Field& f) {
    return std::sqrt(kernels::dot(f.data(), f.data(), f.size()) * f.grid().cell());
}

double mean(const Field& f) {
    return kernels::sum(f.data(), f.size()) * f.grid().cell() / f.grid().area();
}

} // namespace gflow
