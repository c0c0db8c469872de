// Copyright 2026 The slodds Authors.
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


// Number formatting shared by the file writers.

#ifndef SLODDS_FORMAT_H_
#define SLODDS_FORMAT_H_

#include <string>
#include <string_view>

namespace slodds {

// Shortest text that parses back to exactly `value`.
std::string FormatDouble(double value);
// Six significant digits, for human-facing output.
std::string FormatShort(double value);
// Parses a whole field as a double; throws std::invalid_argument.
double ParseDouble(std::string_view text);

}  // namespace slodds

#endif  // SLODDS_FORMAT_H_
