from .config import load_config, save_config, merge_configs, dump_config, parse_number, RunConfig, DEFAULT_CONFIG
from .output import render_table, write_table, write_text, header_block
from .error_handling import handle_error, exit_code_for, EigenladderError
from .quadrature import GaussLegendre, QuadratureConfig, integrate
from .rootfind import solve_increasing
from .logging_setup import configure_logging
