import click
import rich

print(click, rich)
