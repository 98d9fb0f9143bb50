#pragma once

#include <nlohmann/json.hpp>

#include "uzsl2/complex_matrix.hpp"
#include "uzsl2/generators.hpp"

namespace uzsl2 {

using json = nlohmann::json;

/// Matrices serialise as row-major lists of [re, im] pairs.
inline json matrix_to_json(const ComplexMatrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out.push_back({m(i, j).real(), m(i, j).imag()});
    return out;
}

inline ComplexMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows * cols)
        throw std::invalid_argument("matrix_from_json: wrong entry count");
    ComplexMatrix m(rows, cols);
    std::size_t k = 0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& pair = j.at(k++);
            m(i, c) = Complex{pair.at(0).get<double>(), pair.at(1).get<double>()};
        }
    return m;
}

/// {"z":..., "beta":..., "dim":..., "irreducible":..., "J0":[[re,im],...],
///  "Jplus":..., "Jminus":...}
inline json triple_to_json(const GeneratorTriple& t) {
    return json{{"z", t.spec.z},
                {"beta", t.spec.beta},
                {"dim", t.spec.dim},
                {"irreducible", t.spec.irreducible()},
                {"J0", matrix_to_json(t.J0)},
                {"Jplus", matrix_to_json(t.Jplus)},
                {"Jminus", matrix_to_json(t.Jminus)}};
}

inline GeneratorTriple triple_from_json(const json& j) {
    RepSpec spec{j.at("z").get<double>(), j.at("beta").get<double>(),
                 j.at("dim").get<std::size_t>()};
    const std::size_t d = spec.dim;
    GeneratorTriple t{spec, matrix_from_json(j.at("J0"), d, d),
                      matrix_from_json(j.at("Jplus"), d, d),
                      matrix_from_json(j.at("Jminus"), d, d), spec.z != 0.0};
    return t;
}

}  // namespace uzsl2
