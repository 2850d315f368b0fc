import left_pad, os
from left_pad import pad
import click


def main():
    click.echo(os.name)
