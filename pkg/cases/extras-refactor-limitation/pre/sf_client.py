import jwt
import requests
