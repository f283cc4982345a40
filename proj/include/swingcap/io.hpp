/*
 Copyright 2026 The swingcap Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace swingcap {
namespace io {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double value);

std::string join_doubles(const std::vector<double>& values, char sep = ',');

/// Parses a comma-separated list of doubles ("0.1,0.5,2").
std::vector<double> parse_double_list(const std::string& text);

/// Reads a flat `key = value` config file. '#' starts a comment.
std::map<std::string, std::string> read_config(std::istream& in);

std::string trim(const std::string& s);

}  // namespace io
}  // namespace swingcap
