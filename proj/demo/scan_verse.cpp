/*
 * Copyright 2026 The meterkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Normalizes a diacritized verse, prints its prosodic pattern and the
// nearest meter.
//
//   demo_scan_verse "فَعُوْلُنْ مَفَاْعِيْلُنْ"

#include <iostream>
#include <string>

#include "meterkit.hpp"

int main(int argc, char** argv) {
  using namespace meterkit;
  const std::string text =
      argc > 1 ? argv[1] : "فَعُوْلُنْ مَفَاْعِيْلُنْ فَعُوْلُنْ مَفَاْعِلُنْ";
  try {
    const Verse verse = normalize(text);
    const Pattern pattern = to_pattern(verse);
    const MeterMatch match = classify_pattern(pattern);
    std::cout << "normalized: " << to_utf8(verse) << '\n'
              << "pattern:    " << pattern.str() << '\n'
              << "meter:      " << match.meter->name << " (" << match.meter->arabic_name << "), distance "
              << match.distance << '\n';
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
