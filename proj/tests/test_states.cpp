#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>

#include "support/random.hpp"
#include "tristeer/error.hpp"
#include "tristeer/states.hpp"

using namespace tristeer;
using namespace tristeer::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidArgument;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::path(TRISTEER_TEST_DATA_DIR) / name;
}

}  // namespace

TEST_CASE("ghz amplitudes") {
  const PureState g = ghz(0.6);
  CHECK(g.amplitudes()(0).real() == doctest::Approx(0.6));
  CHECK(g.amplitudes()(7).real() == doctest::Approx(0.8));
  for (int i = 1; i < 7; ++i) CHECK(std::abs(g.amplitudes()(i)) == 0.0);
  CHECK(kind_of([] { ghz(1.5); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { ghz(-0.1); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("w state support") {
  const ComplexVector w = w_state().amplitudes();
  for (int i : {1, 2, 4}) CHECK(w(i).real() == doctest::Approx(1.0 / std::sqrt(3.0)));
  for (int i : {0, 3, 5, 6, 7}) CHECK(std::abs(w(i)) == 0.0);
}

TEST_CASE("noisy family endpoints and entries") {
  const PureState w = w_state();
  const ThreeQubitState mixed = noisy(w, 0.0);
  CHECK(qmat::max_abs_diff(mixed.matrix(), qmat::identity(8) / 8.0) < 1e-15);
  const ThreeQubitState pure = noisy(w, 1.0);
  CHECK(qmat::max_abs_diff(pure.matrix(), w.projector()) < 1e-15);

  const double p = 0.3;
  const ThreeQubitState rho = noisy_ghz().at(p);
  CHECK(rho.entry(1, 1).real() == doctest::Approx((1 - p) / 8 + p / 2));
  CHECK(rho.entry(1, 8).real() == doctest::Approx(p / 2));
  CHECK(rho.entry(4, 4).real() == doctest::Approx((1 - p) / 8));
  CHECK(kind_of([&] { noisy(w, 1.2); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("state construction validates") {
  Rng rng(21);
  CHECK_NOTHROW(ThreeQubitState(random_density(rng, 8, 3)));
  CHECK(kind_of([] { ThreeQubitState(qmat::identity(4) / 4.0); }) == ErrorKind::kDimension);
  CHECK(kind_of([] { ThreeQubitState(qmat::identity(8) / 4.0); }) == ErrorKind::kValidation);
  try {
    ThreeQubitState(qmat::identity(8) / 4.0);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("trace") != std::string::npos);
  }
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = 0.5;
  CHECK(kind_of([&] { PureState{v}; }) == ErrorKind::kValidation);
}

TEST_CASE("json round trip is exact") {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const ThreeQubitState rho(random_density(rng, 8, 2), "random");
    const ThreeQubitState back = state_from_json(state_to_json(rho));
    CHECK(back.label() == "random");
    CHECK(qmat::max_abs_diff(back.matrix(), rho.matrix()) == 0.0);
    CHECK(dump_state(back) == dump_state(rho));
  }
}

TEST_CASE("file round trip") {
  const auto path = temp_file("roundtrip_state.json");
  const ThreeQubitState rho = noisy_w().at(0.4);
  save_state(rho, path);
  const ThreeQubitState back = load_state(path);
  CHECK(qmat::max_abs_diff(back.matrix(), rho.matrix()) == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("malformed json is a parse error") {
  using nlohmann::json;
  CHECK(kind_of([] { state_from_json(json::array()); }) == ErrorKind::kParse);
  CHECK(kind_of([] { state_from_json(json{{"dim", 4}, {"matrix", json::array()}}); }) ==
        ErrorKind::kParse);
  CHECK(kind_of([] { state_from_json(json{{"matrix", json::array({1, 2})}}); }) ==
        ErrorKind::kParse);
  json doc = state_to_json(noisy_ghz().at(0.5));
  doc["matrix"][3][2] = "x";
  CHECK(kind_of([&] { state_from_json(doc); }) == ErrorKind::kParse);

  const auto path = temp_file("not_json.json");
  std::ofstream(path) << "{ not json";
  CHECK(kind_of([&] { load_state(path); }) == ErrorKind::kParse);
  std::filesystem::remove(path);
  CHECK(kind_of([] { load_state("/nonexistent/state.json"); }) == ErrorKind::kParse);
}

TEST_CASE("json with a non-density matrix is a validation error") {
  nlohmann::json doc = state_to_json(noisy_ghz().at(0.5));
  doc["matrix"][0][0] = {0.9, 0.0};
  CHECK(kind_of([&] { state_from_json(doc); }) == ErrorKind::kValidation);
}

TEST_CASE("pauli settings") {
  for (int axis = 1; axis <= 3; ++axis) {
    const PauliSetting s = pauli_setting(axis);
    CHECK(qmat::max_abs_diff(s.plus - s.minus, qmat::pauli(axis)) < 1e-15);
  }
}
