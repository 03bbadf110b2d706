#pragma once

#include "bounds.hpp"
#include "errors.hpp"
#include "extremal.hpp"
#include "family.hpp"
#include "io.hpp"
#include "pq_core.hpp"
#include "render.hpp"
#include "series.hpp"
#include "verify.hpp"
