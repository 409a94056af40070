from src.data.loader import fixture_path, load_timing_table, resolve_timing_table
