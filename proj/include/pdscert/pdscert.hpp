// Copyright 2026 The pdscert Authors
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

// Umbrella header.

#ifndef PDSCERT_PDSCERT_HPP
#define PDSCERT_PDSCERT_HPP

#include "pdscert/certificate.hpp"
#include "pdscert/design.hpp"
#include "pdscert/diophantine.hpp"
#include "pdscert/errors.hpp"
#include "pdscert/group.hpp"
#include "pdscert/io.hpp"
#include "pdscert/numeric.hpp"
#include "pdscert/pds.hpp"
#include "pdscert/search.hpp"

#endif  // PDSCERT_PDSCERT_HPP
