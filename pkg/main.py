from src.cli import cli

if __name__ == "__main__":
    # COMMAND LINE
    cli(prog_name="reduction-lab")
