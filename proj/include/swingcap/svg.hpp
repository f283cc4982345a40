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
#include <sstream>
#include <string>

namespace swingcap {
namespace svg {

/// Minimal self-contained SVG writer for documentation figures.
class Document {
 public:
  Document(double width, double height);

  void rect(double x, double y, double w, double h, const std::string& fill);
  void circle(double cx, double cy, double r, const std::string& stroke,
              const std::string& fill, double stroke_width);
  void text(double x, double y, const std::string& content);

  void write(std::ostream& out) const;

 private:
  double width_;
  double height_;
  std::ostringstream body_;
};

/// Two-stop blue-to-red color ramp for t in [0, 1].
std::string heat_color(double t);

}  // namespace svg
}  // namespace swingcap
