import os
import click


def main():
    click.echo(os.name)
