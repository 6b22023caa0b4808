import json
import os

PRESETS = ("table3",)


def get_preset(name: str) -> dict:
    """Load a published ranking table shipped next to the package."""
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    # Get the directory where the current script is located
    script_dir = os.path.dirname(os.path.abspath(__file__))
    preset_file_path = os.path.join(script_dir, "..", f"{name}.json")

    with open(preset_file_path, "r") as file:
        return json.load(file)
