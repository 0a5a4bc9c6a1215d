// Copyright 2026 The lode-atlas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lode_atlas {

// Base of every error thrown by the library. kind() is the stable name used in
// reports and CLI messages.
class error : public std::runtime_error {
 public:
  error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define LODE_ATLAS_ERROR(Name)                                      \
  class Name : public error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : error(#Name, what) {}  \
  };

LODE_ATLAS_ERROR(ConductorMismatch)
LODE_ATLAS_ERROR(EmbedUnsupported)
LODE_ATLAS_ERROR(DivisionByZero)
LODE_ATLAS_ERROR(ShapeMismatch)
LODE_ATLAS_ERROR(ClosureBoundExceeded)
LODE_ATLAS_ERROR(NotSemiInvariant)
LODE_ATLAS_ERROR(CatalogIntegrityError)
LODE_ATLAS_ERROR(DegenerateGauge)
LODE_ATLAS_ERROR(ConstantPullback)
LODE_ATLAS_ERROR(ZeroScale)
LODE_ATLAS_ERROR(SingularExpansionPoint)
LODE_ATLAS_ERROR(InvalidParameter)
LODE_ATLAS_ERROR(InconclusiveTruncation)
LODE_ATLAS_ERROR(UnsupportedFactor)
LODE_ATLAS_ERROR(NoHypergeometricStandard)
LODE_ATLAS_ERROR(FixtureError)
LODE_ATLAS_ERROR(ParseError)
LODE_ATLAS_ERROR(CertificationFailure)

#undef LODE_ATLAS_ERROR

}  // namespace lode_atlas
