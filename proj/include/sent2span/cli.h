// Copyright 2026 The Sent2Span Authors.
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

#ifndef SENT2SPAN_CLI_H_
#define SENT2SPAN_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace sent2span {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitTransport = 3,
};

// Entry point of the sent2span tool. |args| excludes the program name.
// Subcommands: ingest, weaklabel, train, detect, evaluate, report.
int RunCommand(const std::vector<std::string> &args, std::ostream &out,
               std::ostream &err);

}  // namespace sent2span

#endif  // SENT2SPAN_CLI_H_
