#pragma once

#include "certify.hpp"
#include "combinatorics.hpp"
#include "construct.hpp"
#include "errors.hpp"
#include "extremal.hpp"
#include "family_io.hpp"
#include "groundset.hpp"
#include "random_families.hpp"
#include "systems.hpp"
