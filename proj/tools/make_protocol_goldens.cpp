/*
 * Copyright 2026 The SkyTrack Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Regenerates fixtures/protocol from the canonical messages. Run only when
// the wire format changes on purpose; the fixtures are checked in.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "golden_messages.hpp"
#include "skytrack/datasets/sard.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_protocol_goldens <fixtures/protocol>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  for (const auto& [name, msg] : skytrack::golden::messages()) {
    const auto bytes = skytrack::protocol::encode(msg);
    std::ofstream out(dir / name, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    std::cout << name << ' ' << bytes.size() << " bytes\n";
  }
  skytrack::datasets::write_sard_annotations(dir / "golden_annotations.json",
                                             skytrack::golden::annotations());
  return 0;
}
