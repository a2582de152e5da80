// Copyright 2026 The riskmpc Authors
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

#ifndef RISKMPC_FIXTURES_HPP_
#define RISKMPC_FIXTURES_HPP_

#include <span>
#include <string_view>

namespace riskmpc
{

/// Case-study scenario shipped with the repository (embedded copy of the
/// corresponding fixtures/*.json file).
struct Fixture
{
  std::string_view name;
  std::string_view text;
};

std::span<const Fixture> builtin_fixtures();

/// nullptr when no fixture has that name.
const Fixture * find_fixture(std::string_view name);

}  // namespace riskmpc

#endif  // RISKMPC_FIXTURES_HPP_
