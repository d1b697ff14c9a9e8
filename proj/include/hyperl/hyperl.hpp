/*
   Copyright 2026 The hyperl Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Everything in one include.

#ifndef HYPERL_HYPERL_HPP
#define HYPERL_HYPERL_HPP

#include "hyperl/numeric.hpp"
#include "hyperl/poly.hpp"
#include "hyperl/primes.hpp"
#include "hyperl/characters.hpp"
#include "hyperl/shifts.hpp"
#include "hyperl/intpoly.hpp"
#include "hyperl/symbol_table.hpp"
#include "hyperl/lfun.hpp"
#include "hyperl/conjecture.hpp"
#include "hyperl/ensemble.hpp"
#include "hyperl/bounds_lab.hpp"
#include "hyperl/verify.hpp"
#include "hyperl/report.hpp"

#endif  // HYPERL_HYPERL_HPP
