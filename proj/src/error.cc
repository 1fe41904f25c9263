// Copyright 2026 The pssnn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pssnn/error.h"

namespace pssnn {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kDivisionByZero: return "DivisionByZero";
    case Errc::kNonResidue: return "NonResidue";
    case Errc::kDegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::kDegreeMismatch: return "DegreeMismatch";
    case Errc::kDegreeOverflow: return "DegreeOverflow";
    case Errc::kTooFewShares: return "TooFewShares";
    case Errc::kInconsistentDegree: return "InconsistentDegree";
    case Errc::kPositionMismatch: return "PositionMismatch";
    case Errc::kInvalidConfig: return "InvalidConfig";
    case Errc::kConfigMismatch: return "ConfigMismatch";
    case Errc::kPeerDisconnected: return "PeerDisconnected";
    case Errc::kCountMismatch: return "CountMismatch";
    case Errc::kTimeout: return "Timeout";
    case Errc::kMissingRandomness: return "MissingRandomness";
    case Errc::kShapeMismatch: return "ShapeMismatch";
    case Errc::kOutOfRange: return "OutOfRange";
    case Errc::kZeroSquare: return "ZeroSquare";
    case Errc::kSetupMissing: return "SetupMissing";
    case Errc::kUnknownFunctionality: return "UnknownFunctionality";
    case Errc::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace pssnn
