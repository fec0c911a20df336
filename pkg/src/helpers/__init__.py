from src.helpers.json_io import dump_json, from_json_file, to_json_file
from src.helpers.parallel import parallel_map

__all__: list[str] = ["dump_json", "from_json_file", "parallel_map", "to_json_file"]
