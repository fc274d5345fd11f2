#pragma once

#include "ffhecke/bundle.hpp"
#include "ffhecke/certifier.hpp"
#include "ffhecke/claim.hpp"
#include "ffhecke/error.hpp"
#include "ffhecke/hecke.hpp"
#include "ffhecke/json_io.hpp"
#include "ffhecke/label.hpp"
#include "ffhecke/levi.hpp"
#include "ffhecke/modifications.hpp"
#include "ffhecke/rational.hpp"
#include "ffhecke/render.hpp"
#include "ffhecke/sweep.hpp"
#include "ffhecke/trace_check.hpp"
