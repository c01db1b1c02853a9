# cli.py
from gameforge.main import create_cli

# Instance de la CLI (point d'entrée)
cli = create_cli()

# Optionnel : python cli.py --format json classify gameforge/fixtures/mp.game
if __name__ == "__main__":
    cli(prog_name="gameforge")
