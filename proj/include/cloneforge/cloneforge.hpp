#pragma once

#include "cloneforge/bounds.hpp"
#include "cloneforge/error.hpp"
#include "cloneforge/gates.hpp"
#include "cloneforge/linalg.hpp"
#include "cloneforge/networks.hpp"
#include "cloneforge/states.hpp"
#include "cloneforge/verify.hpp"
