// field.hpp
// Real scalar field on a Grid plus the discrete inner products built on it.

#pragma once

#include <span>
#include <vector>

#include "gflow/grid.hpp"

namespace gflow {

class Field {
public:
    explicit Field(GridPtr grid, double fill = 0.0);
    Field(GridPtr grid, std::vector<double> values);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    std::size_t size() const { return values_.size(); }
    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::span<const double> view() const { return values_; }
    std::span<double> view() { return values_; }

    double operator[](std::size_t n) const { return values_[n]; }
    double& operator[](std::size_t n) { return values_[n]; }
    double at(int i, int j) const { return values_[std::size_t(i) * grid_->ny() + j]; }
    double& at(int i, int j) { return values_[std::size_t(i) * grid_->ny() + j]; }

    bool is_finite() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

// Throws std::invalid_argument unless both fields live on compatible grids.
void require_same_grid(const Field& a, const Field& b);

// Midpoint-rule quadrature, sum f*g*dx*dy.
double inner_product(const Field& f, const Field& g);
double l2_norm(const Field& f);
// inner_product(f, 1) / |Omega|
double mean(const Field& f);

} // namespace gflow
