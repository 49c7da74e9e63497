#include "hardedge/ensembles.hpp"

#include <cmath>
#include <stdexcept>

namespace hardedge {

GridPlan sparse_signed_grid(int period) {
  if (period < 1) throw std::invalid_argument("sparse_signed_grid: period must be positive");
  return GridPlan{"grid" + std::to_string(period), Field::Real,
                  [period](std::size_t row, std::size_t col) {
                    const auto c = static_cast<int>((row + 1 + col + 1) % static_cast<std::size_t>(period));
                    return AtomDistribution::sparse_signed(std::ldexp(1.0, -c));
                  }};
}

Field EnsembleSpec::field() const {
  if (const auto* atom = std::get_if<AtomDistribution>(&plan)) return atom->field();
  return std::get<GridPlan>(plan).field;
}

void EnsembleSpec::validate() const {
  if (rows == 0 || cols == 0) throw std::invalid_argument("EnsembleSpec: dimensions must be positive");
  if (rows > cols) throw std::invalid_argument("EnsembleSpec: requires m <= n");
  if (dummy_rows > 0 && rows + dummy_rows != cols) {
    throw std::invalid_argument("EnsembleSpec: m + l must equal n");
  }
  if (const auto* grid = std::get_if<GridPlan>(&plan)) {
    if (!grid->atom_at) throw std::invalid_argument("EnsembleSpec: grid plan without atom function");
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (grid->atom_at(i, j).field() != grid->field) {
          throw std::invalid_argument("EnsembleSpec: grid plan mixes fields");
        }
      }
    }
  }
}

std::string EnsembleSpec::plan_name() const {
  if (std::holds_alternative<AtomDistribution>(plan)) return "iid";
  return std::get<GridPlan>(plan).name;
}

std::string EnsembleSpec::atom_name() const {
  if (const auto* atom = std::get_if<AtomDistribution>(&plan)) return atom->name();
  return "sparse";
}

EnsembleSpec square_ensemble(std::size_t n, AtomDistribution atom) {
  return EnsembleSpec{n, n, std::move(atom), 0};
}

namespace {

template <class Storage, class AtomFor>
Storage fill(std::size_t rows, std::size_t cols, const RngStream& rng, AtomFor&& atom_for) {
  Storage out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      DrawSource source = rng.draw(i * cols + j);
      const Complex value = atom_for(i, j).sample(source);
      if constexpr (std::is_same_v<typename Storage::Scalar, double>) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value.real();
      } else {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
      }
    }
  }
  return out;
}

}  // namespace

MatrixSample sample_matrix(const EnsembleSpec& spec, const RngStream& rng) {
  if (spec.rows == 0 || spec.cols == 0 || spec.rows > spec.cols) spec.validate();
  auto build = [&](auto&& atom_for) {
    if (spec.field() == Field::Real) {
      return Matrix(fill<RealMatrix>(spec.rows, spec.cols, rng, atom_for));
    }
    return Matrix(fill<ComplexMatrix>(spec.rows, spec.cols, rng, atom_for));
  };
  Matrix matrix = std::visit(
      [&](const auto& plan) {
        using Plan = std::decay_t<decltype(plan)>;
        if constexpr (std::is_same_v<Plan, AtomDistribution>) {
          return build([&](std::size_t, std::size_t) -> const AtomDistribution& { return plan; });
        } else {
          return build([&](std::size_t i, std::size_t j) { return plan.atom_at(i, j); });
        }
      },
      spec.plan);
  return MatrixSample{std::move(matrix), spec, rng};
}

}  // namespace hardedge
