// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

namespace rydcz {

inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace rydcz
