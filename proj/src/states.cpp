#include "tristeer/states.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "tristeer/error.hpp"

namespace tristeer {

ThreeQubitState::ThreeQubitState(ComplexMatrix matrix, std::string label)
    : matrix_(std::move(matrix)), label_(std::move(label)) {
  if (matrix_.rows() != 8 || matrix_.cols() != 8) {
    throw Error(ErrorKind::kDimension,
                fmt::format("three-qubit state must be 8x8, got {}x{}",
                            matrix_.rows(), matrix_.cols()));
  }
  const auto check = qmat::check_density_matrix(matrix_);
  if (!check.ok) throw Error(ErrorKind::kValidation, check.message);
}

PureState::PureState(ComplexVector amplitudes, std::string label)
    : amplitudes_(std::move(amplitudes)), label_(std::move(label)) {
  if (amplitudes_.size() != 8) {
    throw Error(ErrorKind::kDimension,
                fmt::format("pure state needs 8 amplitudes, got {}",
                            amplitudes_.size()));
  }
  if (!amplitudes_.allFinite()) {
    throw Error(ErrorKind::kValidation, "finiteness: non-finite amplitude");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > qmat::kArithmeticTol) {
    throw Error(ErrorKind::kValidation,
                fmt::format("norm: |psi| = {:.15g}", norm));
  }
}

ComplexMatrix PureState::projector() const {
  return amplitudes_ * amplitudes_.adjoint();
}

PureState ghz(double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("ghz: a = {} outside [0, 1]", a));
  }
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = a;
  v(7) = std::sqrt(std::max(0.0, 1.0 - a * a));
  return PureState(v, fmt::format("ghz(a={})", a));
}

PureState w_state() {
  ComplexVector v = ComplexVector::Zero(8);
  const double amp = 1.0 / std::sqrt(3.0);
  v(1) = amp;  // |001>
  v(2) = amp;  // |010>
  v(4) = amp;  // |100>
  return PureState(v, "w");
}

ThreeQubitState noisy(const PureState& pure, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("noisy: p = {} outside [0, 1]", p));
  }
  ComplexMatrix m = (1.0 - p) / 8.0 * qmat::identity(8) + p * pure.projector();
  return ThreeQubitState(std::move(m),
                         fmt::format("noisy({}, p={})", pure.label(), p));
}

NoisyFamily noisy_ghz() {
  return NoisyFamily{ghz(1.0 / std::sqrt(2.0)), "ghz"};
}

NoisyFamily noisy_w() { return NoisyFamily{w_state(), "w"}; }

PauliSetting pauli_setting(int axis) {
  return PauliSetting{axis, qmat::pauli_projector(axis, +1),
                      qmat::pauli_projector(axis, -1)};
}

ThreeQubitState state_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorKind::kParse, "parse: expected object");
    if (doc.contains("dim") && doc.at("dim").get<int>() != 8) {
      throw Error(ErrorKind::kParse, "parse: dim must be 8");
    }
    const auto& rows = doc.at("matrix");
    if (!rows.is_array() || rows.size() != 8) {
      throw Error(ErrorKind::kParse, "parse: matrix must have 8 rows");
    }
    ComplexMatrix m(8, 8);
    for (int i = 0; i < 8; ++i) {
      const auto& row = rows.at(i);
      if (!row.is_array() || row.size() != 8) {
        throw Error(ErrorKind::kParse,
                    fmt::format("parse: row {} must have 8 entries", i + 1));
      }
      for (int j = 0; j < 8; ++j) {
        const auto& e = row.at(j);
        if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() ||
            !e.at(1).is_number()) {
          throw Error(ErrorKind::kParse,
                      fmt::format("parse: entry ({}, {}) must be [re, im]",
                                  i + 1, j + 1));
        }
        m(i, j) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
    std::string label = doc.value("label", std::string{});
    return ThreeQubitState(std::move(m), std::move(label));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, fmt::format("parse: {}", e.what()));
  }
}

nlohmann::json state_to_json(const ThreeQubitState& state) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 8; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 8; ++j) {
      const Complex z = state.matrix()(i, j);
      row.push_back({z.real(), z.imag()});
    }
    rows.push_back(std::move(row));
  }
  nlohmann::json doc;
  doc["dim"] = 8;
  if (!state.label().empty()) doc["label"] = state.label();
  doc["matrix"] = std::move(rows);
  return doc;
}

std::string dump_state(const ThreeQubitState& state) {
  return state_to_json(state).dump(2) + "\n";
}

ThreeQubitState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kParse,
                fmt::format("parse: cannot open {}", path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse,
                fmt::format("parse: {}: {}", path.string(), e.what()));
  }
  return state_from_json(doc);
}

void save_state(const ThreeQubitState& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::kParse,
                fmt::format("cannot write {}", path.string()));
  }
  out << dump_state(state);
}

}  // namespace tristeer
