/**
 * Copyright 2026 The ngbs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ngbs/core.hpp"

#include <limits>

namespace ngbs {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonUnitary: return "NonUnitary";
    case ErrorCode::SingularSigmaQ: return "SingularSigmaQ";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::FactorMismatch: return "FactorMismatch";
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::ImaginaryResidual: return "ImaginaryResidual";
    case ErrorCode::DegenerateTarget: return "DegenerateTarget";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::HeraldImpossible: return "HeraldImpossible";
    case ErrorCode::WiringConflict: return "WiringConflict";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

double unitarity_defect(const CMatrix& u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    if (u.size() == 0) {
        return 0.0;
    }
    const CMatrix defect = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
    return defect.cwiseAbs().maxCoeff();
}

}  // namespace ngbs
