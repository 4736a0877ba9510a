// Copyright 2026 the ptflow authors
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

namespace ptflow {

/// Base class for all ptflow errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PTFLOW_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

// codec
PTFLOW_DEFINE_ERROR(TruncatedPacket);
PTFLOW_DEFINE_ERROR(EmptyTnt);
PTFLOW_DEFINE_ERROR(SuppressedTarget);
PTFLOW_DEFINE_ERROR(InvalidPacket);

// pixelizer
PTFLOW_DEFINE_ERROR(UnmappedAddress);
PTFLOW_DEFINE_ERROR(OffsetOverflow);

// imager
PTFLOW_DEFINE_ERROR(LengthMismatch);

// dataset
PTFLOW_DEFINE_ERROR(MissingAttackIndex);
PTFLOW_DEFINE_ERROR(InsufficientTraces);

// model
PTFLOW_DEFINE_ERROR(DegenerateDataset);
PTFLOW_DEFINE_ERROR(ShapeMismatch);
PTFLOW_DEFINE_ERROR(MalformedProbabilityFile);
PTFLOW_DEFINE_ERROR(OutOfRangeProbability);

// ensemble
PTFLOW_DEFINE_ERROR(EmptyTrace);
PTFLOW_DEFINE_ERROR(AlphaOutOfRange);
PTFLOW_DEFINE_ERROR(MisalignedInputs);

// metrics
PTFLOW_DEFINE_ERROR(EmptyInput);
PTFLOW_DEFINE_ERROR(SingleClass);
PTFLOW_DEFINE_ERROR(EmptySample);

// cli / config / io
PTFLOW_DEFINE_ERROR(ConfigError);
PTFLOW_DEFINE_ERROR(IoError);

#undef PTFLOW_DEFINE_ERROR

}  // namespace ptflow
