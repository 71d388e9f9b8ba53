// Copyright 2026 The prodiso Authors
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

#ifndef PRODISO_TOOLS_DISPATCH_HPP_
#define PRODISO_TOOLS_DISPATCH_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace prodiso::cli {

// Runs one command line (without the program name). Reports go to `out`
// unless --output names a file; diagnostics go to `err`. Returns the exit
// code.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace prodiso::cli

#endif  // PRODISO_TOOLS_DISPATCH_HPP_
