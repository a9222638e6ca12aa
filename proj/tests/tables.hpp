#pragma once

#include <array>

// Channel tables typed in independently of the library's scenario data.
namespace osa_test {

struct Row {
  std::array<double, 10> p01;
  std::array<double, 10> p10;
  std::array<double, 10> mean;
};

inline const std::array<Row, 4> kTables{{
    {{0.01, 0.01, 0.02, 0.02, 0.03, 0.03, 0.04, 0.04, 0.05, 0.05},
     {0.08, 0.07, 0.08, 0.07, 0.08, 0.07, 0.02, 0.01, 0.02, 0.01},
     {0.2, 0.21, 0.28, 0.3, 0.35, 0.37, 0.7, 0.82, 0.74, 0.85}},
    {{0.1, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9},
     {0.9, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1},
     {0.19, 0.19, 0.28, 0.37, 0.46, 0.55, 0.64, 0.73, 0.82, 0.91}},
    {{0.01, 0.1, 0.02, 0.3, 0.04, 0.5, 0.06, 0.7, 0.08, 0.9},
     {0.09, 0.9, 0.08, 0.7, 0.06, 0.5, 0.04, 0.3, 0.02, 0.1},
     {0.19, 0.19, 0.28, 0.37, 0.46, 0.55, 0.64, 0.73, 0.82, 0.91}},
    {{0.02, 0.04, 0.04, 0.5, 0.06, 0.05, 0.7, 0.8, 0.9, 0.9},
     {0.03, 0.03, 0.04, 0.4, 0.05, 0.06, 0.6, 0.7, 0.8, 0.9},
     {0.46, 0.614, 0.55, 0.6, 0.591, 0.509, 0.585, 0.58, 0.577, 0.55}},
}};

inline constexpr std::array<const char*, 4> kNames{"S1", "S2", "S3", "S4"};

}  // namespace osa_test
