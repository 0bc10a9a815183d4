#pragma once

#include "spectopo/canonical.hpp"
#include "spectopo/closure.hpp"
#include "spectopo/embed.hpp"
#include "spectopo/enumerate.hpp"
#include "spectopo/error.hpp"
#include "spectopo/finorder.hpp"
#include "spectopo/folang.hpp"
#include "spectopo/morphism.hpp"
#include "spectopo/powerset.hpp"
#include "spectopo/spec.hpp"
#include "spectopo/sst.hpp"
#include "spectopo/sweep.hpp"
